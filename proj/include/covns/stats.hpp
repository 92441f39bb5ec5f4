#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace covns {

/// Mean, maximum and population standard deviation of one cell's runs.
struct CellSummary {
  double mean;
  double best;
  double std;
};

CellSummary aggregate(std::span<const double> runs);

/// Run fitness values per (algorithm, instance), in first-seen order.
class ResultMatrix {
 public:
  void add(std::string_view algorithm, std::string_view instance, double fitness);

  const std::vector<std::string>& algorithms() const { return algorithms_; }
  const std::vector<std::string>& instances() const { return instances_; }
  const std::vector<double>& cell(std::size_t algorithm, std::size_t instance) const;

  /// Throws when a cell is empty or run counts differ between cells.
  void validate() const;

  /// algorithms x instances matrix of cell means.
  Eigen::MatrixXd means() const;

 private:
  std::size_t intern(std::vector<std::string>& names, std::string_view name);

  std::vector<std::string> algorithms_;
  std::vector<std::string> instances_;
  std::vector<std::vector<std::vector<double>>> cells_;  // [algorithm][instance]
};

/// Friedman mean ranks. `means` is algorithms x instances; per instance the
/// highest mean gets rank 1 and ties share the average of their positions.
Eigen::VectorXd friedman_ranks(const Eigen::MatrixXd& means);

struct PosthocComparison {
  std::string algorithm;
  double z;
  double unadjusted_p;
  double adjusted_p;
};

/// Two-sided z-tests of every algorithm against `control` on Friedman mean
/// ranks, z = (R_j - R_control) / sqrt(k(k+1) / 6n), with Holm's step-down
/// adjustment. Results follow the order of `algorithms`, control omitted.
std::vector<PosthocComparison> holm_posthoc(std::span<const std::string> algorithms,
                                            const Eigen::VectorXd& mean_ranks,
                                            std::size_t instance_count,
                                            std::string_view control);

/// 2 * (1 - Phi(|z|)).
double two_sided_normal_p(double z);

struct StatsReport {
  std::vector<std::string> algorithms;
  std::vector<std::string> instances;
  std::vector<std::vector<CellSummary>> cells;  // [algorithm][instance]
  Eigen::VectorXd mean_ranks;
  std::string control;
  std::vector<PosthocComparison> posthoc;  // empty with a single algorithm
};

StatsReport analyze(const ResultMatrix& results, std::string_view control);

std::string format_report(const StatsReport& report);
std::string report_csv(const StatsReport& report);
nlohmann::json report_json(const StatsReport& report);

/// Reads a results CSV with a header naming at least "algorithm", "instance"
/// and "fitness" (or "best_fitness"). Malformed rows raise std::runtime_error
/// carrying `source` and the line number.
ResultMatrix read_results_csv(std::istream& in, std::string_view source = "<input>");

}  // namespace covns
