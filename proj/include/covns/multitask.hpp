#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

#include "covns/graph.hpp"
#include "covns/partition.hpp"
#include "covns/rng.hpp"
#include "covns/vns.hpp"

namespace covns {

/// Subpopulation bound to one task; fitness values refer to that task only.
struct Deme {
  std::size_t task_index = 0;  // 0-based
  std::vector<EvaluatedIndividual> individuals;

  /// First slot holding the highest fitness.
  std::size_t best_slot() const;
  /// First slot holding the lowest fitness.
  std::size_t worst_slot() const;
};

enum class MigrationDirection {
  Pull,  // deme k replaces its worst with the best of a random other deme
  Push,  // deme k sends its best over the worst of a random other deme
};

struct MigrationPolicy {
  /// Fraction of the per-deme budget between migration epochs.
  double freq_migr = 0.03;
  /// Fraction of the deme size migrated per deme and epoch.
  double prop = 0.05;
  MigrationDirection direction = MigrationDirection::Pull;

  void validate() const;
  /// Evaluations between epochs: ceil(freq_migr * per_deme_budget), at least 1.
  std::size_t interval(std::size_t per_deme_budget) const;
  /// Migrants per deme and epoch: max(1, round(deme_size * prop)).
  std::size_t migrants(std::size_t deme_size) const;
};

enum class Execution { Sequential, Parallel };

/// Adapts a solution to another task's dimension. Shrinking keeps the first
/// `target_length` labels; growing appends the tail of `replaced` (which must
/// have `target_length` labels). The result is repaired.
Partition resize_solution(const Partition& x, std::size_t target_length,
                          const Partition& replaced);

/// Indices of the `per_deme` best rows of column k of `fitness` (pool x tasks),
/// ties going to the lower row, returned in ascending row order.
std::vector<std::vector<std::size_t>> select_demes(const Eigen::MatrixXd& fitness,
                                                   std::size_t per_deme);

/// Draws `total_pop` individuals at the largest task dimension, evaluates each
/// on every task (charging evaluator k for the evaluations on task k) and
/// hands deme k the total_pop/K best for task k. The same individual may land
/// in several demes.
std::vector<Deme> initialize_demes(std::span<Evaluator> evaluators, std::size_t total_pop,
                                   Rng& rng);

/// One migration epoch over all demes in index order; every migrant is
/// evaluated on its destination task against that deme's budget. Demes whose
/// budget is spent receive nothing. No-op for a single deme.
void migrate(std::vector<Deme>& demes, const MigrationPolicy& policy,
             std::span<Evaluator> evaluators, Rng& rng);

struct MultitaskResult {
  std::vector<SolveResult> tasks;
  std::size_t total_evaluations = 0;
  std::size_t migration_epochs = 0;
};

/// Coevolutionary VNS. Each task gets cfg.evaluation_budget evaluations
/// (initialization share included); the run spends K times that in total.
MultitaskResult solve_covns(std::span<const WeightedDigraph> tasks, const VnsConfig& cfg,
                            const MigrationPolicy& policy,
                            Execution execution = Execution::Sequential);

/// Same as solve_covns with migration disabled.
MultitaskResult solve_pvns(std::span<const WeightedDigraph> tasks, const VnsConfig& cfg,
                           Execution execution = Execution::Sequential);

}  // namespace covns
