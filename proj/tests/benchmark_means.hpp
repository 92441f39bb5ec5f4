#pragma once

// Reported per-instance mean modularity of CoVNS, pVNS and sVNS (rows, in
// that order) on the eleven OI and UI instances of sizes 50..100.

#include <array>
#include <string>

#include <Eigen/Dense>

namespace reference {

inline const std::array<std::string, 3> kAlgorithms{"covns", "pvns", "svns"};

inline Eigen::MatrixXd oi_means() {
  Eigen::MatrixXd m(3, 11);
  m << 0.330, 0.322, 0.342, 0.311, 0.291, 0.301, 0.276, 0.256, 0.247, 0.252, 0.230,
       0.322, 0.294, 0.280, 0.252, 0.224, 0.224, 0.200, 0.179, 0.172, 0.165, 0.157,
       0.319, 0.286, 0.290, 0.260, 0.229, 0.226, 0.205, 0.189, 0.169, 0.172, 0.160;
  return m;
}

inline Eigen::MatrixXd ui_means() {
  Eigen::MatrixXd m(3, 11);
  m << 0.299, 0.279, 0.287, 0.251, 0.227, 0.231, 0.205, 0.180, 0.169, 0.168, 0.164,
       0.323, 0.282, 0.270, 0.243, 0.226, 0.222, 0.201, 0.183, 0.167, 0.169, 0.163,
       0.322, 0.295, 0.280, 0.258, 0.219, 0.217, 0.201, 0.203, 0.166, 0.162, 0.152;
  return m;
}

inline std::string instance(const char* mode, int column) {
  return std::string(mode) + "_" + std::to_string(50 + 5 * column) + "_8";
}

}  // namespace reference
