#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "covns/graph.hpp"
#include "covns/operators.hpp"
#include "covns/partition.hpp"
#include "covns/rng.hpp"

namespace covns {

struct VnsConfig {
  /// Individuals per population (per deme for the multitask solvers).
  std::size_t population_size = 10;
  /// Modularity evaluations allowed per task, initialization included.
  std::size_t evaluation_budget = 10 * 1000;
  std::vector<OperatorKind> operators = default_operators();
  std::uint64_t seed = 0;

  void validate() const;
};

struct EvaluatedIndividual {
  Partition partition;
  double fitness;
};

/// Budgeted modularity evaluation on one task.
///
/// Counts every evaluation, records the best-so-far fitness after each one
/// (trace()[i] is the best after evaluation i+1) and keeps the best-ever
/// individual.
class Evaluator {
 public:
  Evaluator(const WeightedDigraph& graph, std::size_t budget);

  const WeightedDigraph& graph() const { return *graph_; }
  std::size_t budget() const { return budget_; }
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return budget_ - used_; }
  bool exhausted() const { return used_ >= budget_; }

  /// Throws std::logic_error once the budget is spent.
  double evaluate(const Partition& p);

  const std::vector<double>& trace() const { return trace_; }
  const std::optional<EvaluatedIndividual>& best() const { return best_; }

 private:
  const WeightedDigraph* graph_;
  std::size_t budget_;
  std::size_t used_ = 0;
  std::vector<double> trace_;
  std::optional<EvaluatedIndividual> best_;
};

/// One pass over the population: every slot draws an operator uniformly from
/// `operators`, evaluates a single successor and keeps it only on strict
/// improvement. Stops early, mid-pass, when the evaluator runs out of budget.
/// Returns the number of evaluations spent.
std::size_t vns_iteration(std::vector<EvaluatedIndividual>& population,
                          std::span<const OperatorKind> operators, Evaluator& evaluator, Rng& rng);

struct SolveResult {
  EvaluatedIndividual best;
  std::vector<double> trace;
  std::size_t evaluations = 0;
};

/// Stream ids shared by the single- and multi-population solvers. The
/// initial population is drawn from stream 0 and task k (1-based) iterates
/// on stream k, so a one-task multitask run replays solve_svns exactly.
inline constexpr std::uint64_t kInitStream = 0;

/// Standalone population-based VNS on one graph.
SolveResult solve_svns(const WeightedDigraph& g, const VnsConfig& cfg);

}  // namespace covns
