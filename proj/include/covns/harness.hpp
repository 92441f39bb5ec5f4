#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covns/multitask.hpp"
#include "covns/scenario.hpp"
#include "covns/stats.hpp"

namespace covns {

enum class Algorithm { CoVNS, PVNS, SVNS };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view token);

/// Runs one algorithm over all tasks. `cfg.evaluation_budget` is the per-task
/// budget; svns solves every task on its own with the same seed.
MultitaskResult solve(Algorithm algorithm, std::span<const WeightedDigraph> tasks,
                      const VnsConfig& cfg, const MigrationPolicy& policy,
                      Execution execution = Execution::Sequential);

struct ExperimentPlan {
  std::filesystem::path manifest;
  std::vector<Algorithm> algorithms{Algorithm::CoVNS, Algorithm::PVNS, Algorithm::SVNS};
  std::size_t run_count = 20;
  std::uint64_t base_seed = 1;
  std::size_t n_per_deme = 10;
  std::size_t evals_per_individual = 1000;
  MigrationPolicy migration;
  std::size_t workers = 1;
  /// Fill wall_time_ms; off by default so result files are reproducible.
  bool record_timing = false;
  /// Where results.csv and per-run artifacts go; empty keeps everything in memory.
  std::filesystem::path output_dir;
  bool save_traces = true;

  void validate() const;
};

struct RunRecord {
  Algorithm algorithm;
  std::string instance;
  std::size_t run_index;
  double best_fitness;
  std::size_t evaluations_used;
  double wall_time_ms;
  Partition best_partition;
};

struct BudgetEntry {
  Algorithm algorithm;
  std::size_t run_index;
  std::size_t evaluations;
};

struct ExperimentResult {
  ResultMatrix results;
  std::vector<RunRecord> records;   // algorithm, run, instance order
  std::vector<BudgetEntry> ledger;  // one entry per (algorithm, run)
};

/// Seeds run r with base_seed + r. Runs are spread over plan.workers threads;
/// output does not depend on the worker count.
ExperimentResult run_experiment(const ExperimentPlan& plan);
ExperimentResult run_experiment(const Scenario& scenario, const ExperimentPlan& plan);

/// Header: algorithm,instance,run_index,best_fitness,evaluations_used,wall_time_ms
std::string results_csv(std::span<const RunRecord> records);

}  // namespace covns
