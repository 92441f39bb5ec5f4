#include "covns/vns.hpp"

#include <stdexcept>

namespace covns {

void VnsConfig::validate() const {
  if (population_size == 0) throw std::invalid_argument("population size must be positive");
  if (evaluation_budget < population_size) {
    throw std::invalid_argument("evaluation budget must cover the initial population");
  }
  if (operators.empty()) throw std::invalid_argument("operator set must not be empty");
}

Evaluator::Evaluator(const WeightedDigraph& graph, std::size_t budget)
    : graph_(&graph), budget_(budget) {
  trace_.reserve(budget);
}

double Evaluator::evaluate(const Partition& p) {
  if (exhausted()) throw std::logic_error("evaluation budget exhausted");
  const double fitness = modularity(*graph_, p);
  ++used_;
  if (!best_ || fitness > best_->fitness) best_ = EvaluatedIndividual{p, fitness};
  trace_.push_back(best_->fitness);
  return fitness;
}

std::size_t vns_iteration(std::vector<EvaluatedIndividual>& population,
                          std::span<const OperatorKind> operators, Evaluator& evaluator, Rng& rng) {
  const std::size_t start = evaluator.used();
  for (auto& individual : population) {
    if (evaluator.exhausted()) break;
    const OperatorKind kind = operators[rng.index(operators.size())];
    Partition successor = apply_operator(kind, individual.partition, rng);
    const double fitness = evaluator.evaluate(successor);
    if (fitness > individual.fitness) {
      individual.partition = std::move(successor);
      individual.fitness = fitness;
    }
  }
  return evaluator.used() - start;
}

SolveResult solve_svns(const WeightedDigraph& g, const VnsConfig& cfg) {
  cfg.validate();
  if (!(g.total_weight() > 0.0)) throw std::invalid_argument("svns: graph has zero total weight");

  Evaluator evaluator(g, cfg.evaluation_budget);
  Rng init = Rng::stream(cfg.seed, kInitStream);
  std::vector<EvaluatedIndividual> population;
  population.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size; ++i) {
    Partition p = random_partition(g.node_count(), init);
    const double fitness = evaluator.evaluate(p);
    population.push_back({std::move(p), fitness});
  }

  Rng rng = Rng::stream(cfg.seed, 1);
  while (!evaluator.exhausted()) vns_iteration(population, cfg.operators, evaluator, rng);

  return {*evaluator.best(), evaluator.trace(), evaluator.used()};
}

}  // namespace covns
