#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace covns {

/// Defaults shared by every subcommand.
namespace defaults {
inline constexpr std::size_t n_per_deme = 10;
inline constexpr std::size_t evals_per_individual = 1000;
inline constexpr double freq_migr = 0.03;
inline constexpr double prop = 0.05;
inline constexpr std::size_t runs = 20;
inline constexpr std::size_t base_node_count = 50;
inline constexpr std::size_t increment = 5;
inline constexpr std::size_t instance_count = 11;
inline constexpr std::size_t communities = 8;
inline constexpr double p_in = 0.85;
inline constexpr double p_out = 0.15;
}  // namespace defaults

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `covns` tool; `args` excludes the program name.
/// Subcommands: generate, solve, experiment, report.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covns
