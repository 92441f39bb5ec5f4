#include "covns/multitask.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace covns {

std::size_t Deme::best_slot() const {
  if (individuals.empty()) throw std::logic_error("empty deme");
  std::size_t best = 0;
  for (std::size_t i = 1; i < individuals.size(); ++i) {
    if (individuals[i].fitness > individuals[best].fitness) best = i;
  }
  return best;
}

std::size_t Deme::worst_slot() const {
  if (individuals.empty()) throw std::logic_error("empty deme");
  std::size_t worst = 0;
  for (std::size_t i = 1; i < individuals.size(); ++i) {
    if (individuals[i].fitness < individuals[worst].fitness) worst = i;
  }
  return worst;
}

void MigrationPolicy::validate() const {
  if (!(freq_migr > 0.0 && freq_migr < 1.0)) {
    throw std::invalid_argument("freq_migr must lie in (0, 1)");
  }
  if (!(prop > 0.0 && prop <= 1.0)) throw std::invalid_argument("prop must lie in (0, 1]");
}

std::size_t MigrationPolicy::interval(std::size_t per_deme_budget) const {
  // 1e-9 absorbs representation error such as 0.03 * 10000 = 300.00000000000006.
  const double raw = freq_migr * static_cast<double>(per_deme_budget);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

std::size_t MigrationPolicy::migrants(std::size_t deme_size) const {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::round(static_cast<double>(deme_size) * prop)));
}

namespace {

Partition truncate(const Partition& x, std::size_t target_length) {
  if (target_length == x.size()) return x;
  return repair(x.labels().first(target_length));
}

}  // namespace

Partition resize_solution(const Partition& x, std::size_t target_length,
                          const Partition& replaced) {
  if (replaced.size() != target_length) {
    throw std::invalid_argument("resize_solution: replaced solution has " +
                                std::to_string(replaced.size()) + " labels, expected " +
                                std::to_string(target_length));
  }
  if (target_length <= x.size()) return truncate(x, target_length);
  std::vector<int> labels(x.labels().begin(), x.labels().end());
  labels.insert(labels.end(), replaced.labels().begin() + static_cast<std::ptrdiff_t>(x.size()),
                replaced.labels().end());
  return repair(labels);
}

std::vector<std::vector<std::size_t>> select_demes(const Eigen::MatrixXd& fitness,
                                                   std::size_t per_deme) {
  const auto pool = static_cast<std::size_t>(fitness.rows());
  if (per_deme > pool) throw std::invalid_argument("select_demes: deme larger than pool");
  std::vector<std::vector<std::size_t>> demes;
  for (Eigen::Index k = 0; k < fitness.cols(); ++k) {
    std::vector<std::size_t> rows(pool);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      return fitness(static_cast<Eigen::Index>(a), k) > fitness(static_cast<Eigen::Index>(b), k);
    });
    rows.resize(per_deme);
    std::sort(rows.begin(), rows.end());
    demes.push_back(std::move(rows));
  }
  return demes;
}

std::vector<Deme> initialize_demes(std::span<Evaluator> evaluators, std::size_t total_pop,
                                   Rng& rng) {
  const std::size_t tasks = evaluators.size();
  if (tasks == 0) throw std::invalid_argument("initialize_demes: no tasks");
  if (total_pop == 0 || total_pop % tasks != 0) {
    throw std::invalid_argument("initialize_demes: population " + std::to_string(total_pop) +
                                " is not a positive multiple of the task count " +
                                std::to_string(tasks));
  }
  std::size_t max_dim = 0;
  for (const auto& ev : evaluators) {
    if (ev.remaining() < total_pop) {
      throw std::invalid_argument("initialize_demes: budget cannot cover initialization");
    }
    max_dim = std::max(max_dim, ev.graph().node_count());
  }

  std::vector<std::vector<Partition>> resized(total_pop);
  Eigen::MatrixXd fitness(static_cast<Eigen::Index>(total_pop), static_cast<Eigen::Index>(tasks));
  for (std::size_t p = 0; p < total_pop; ++p) {
    const Partition x = random_partition(max_dim, rng);
    resized[p].reserve(tasks);
    for (std::size_t k = 0; k < tasks; ++k) {
      resized[p].push_back(truncate(x, evaluators[k].graph().node_count()));
      fitness(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k)) =
          evaluators[k].evaluate(resized[p].back());
    }
  }

  const auto chosen = select_demes(fitness, total_pop / tasks);
  std::vector<Deme> demes(tasks);
  for (std::size_t k = 0; k < tasks; ++k) {
    demes[k].task_index = k;
    for (std::size_t p : chosen[k]) {
      demes[k].individuals.push_back(
          {resized[p][k], fitness(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k))});
    }
  }
  return demes;
}

namespace {

void transfer(const Deme& source, Deme& destination, Evaluator& evaluator) {
  const EvaluatedIndividual& migrant = source.individuals[source.best_slot()];
  const std::size_t worst = destination.worst_slot();
  Partition adjusted = resize_solution(migrant.partition, evaluator.graph().node_count(),
                                       destination.individuals[worst].partition);
  const double fitness = evaluator.evaluate(adjusted);
  destination.individuals[worst] = {std::move(adjusted), fitness};
}

std::size_t other_deme(std::size_t self, std::size_t count, Rng& rng) {
  std::size_t other = rng.index(count - 1);
  return other >= self ? other + 1 : other;
}

}  // namespace

void migrate(std::vector<Deme>& demes, const MigrationPolicy& policy,
             std::span<Evaluator> evaluators, Rng& rng) {
  const std::size_t count = demes.size();
  if (count < 2) return;
  if (evaluators.size() != count) throw std::invalid_argument("migrate: one evaluator per deme");
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t migrants = policy.migrants(demes[k].individuals.size());
    for (std::size_t j = 0; j < migrants; ++j) {
      const std::size_t other = other_deme(k, count, rng);
      if (policy.direction == MigrationDirection::Pull) {
        if (evaluators[k].exhausted()) break;
        transfer(demes[other], demes[k], evaluators[k]);
      } else {
        if (evaluators[other].exhausted()) continue;
        transfer(demes[k], demes[other], evaluators[other]);
      }
    }
  }
}

namespace {

MultitaskResult run_demes(std::span<const WeightedDigraph> tasks, const VnsConfig& cfg,
                          const MigrationPolicy* policy, Execution execution) {
  cfg.validate();
  if (policy) policy->validate();
  const std::size_t count = tasks.size();
  if (count == 0) throw std::invalid_argument("multitask solver: empty task list");
  for (std::size_t k = 0; k < count; ++k) {
    if (!(tasks[k].total_weight() > 0.0)) {
      throw std::invalid_argument("multitask solver: task " + std::to_string(k + 1) +
                                  " has zero total weight");
    }
  }
  const std::size_t budget = cfg.evaluation_budget;
  const std::size_t total_pop = count * cfg.population_size;
  if (budget < total_pop) {
    throw std::invalid_argument("multitask solver: per-task budget " + std::to_string(budget) +
                                " is below the initialization share " +
                                std::to_string(total_pop));
  }

  std::vector<Evaluator> evaluators;
  evaluators.reserve(count);
  for (const auto& g : tasks) evaluators.emplace_back(g, budget);

  Rng init = Rng::stream(cfg.seed, kInitStream);
  std::vector<Deme> demes = initialize_demes(evaluators, total_pop, init);

  std::vector<Rng> rngs;
  rngs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) rngs.push_back(Rng::stream(cfg.seed, k + 1));
  Rng migration_rng = Rng::stream(cfg.seed, count + 1);

  const std::size_t interval = policy ? policy->interval(budget) : 0;
  std::vector<char> crossed(count, 0);

  // Runs deme k until its evaluation count passes the next epoch boundary or
  // the budget is spent. Demes share nothing between epochs.
  auto segment = [&](std::size_t k) {
    Evaluator& ev = evaluators[k];
    const std::size_t start = ev.used();
    crossed[k] = 0;
    while (!ev.exhausted()) {
      vns_iteration(demes[k].individuals, cfg.operators, ev, rngs[k]);
      if (interval != 0 && ev.used() / interval > start / interval) {
        crossed[k] = 1;
        break;
      }
    }
  };

  MultitaskResult result;
  auto all_spent = [&] {
    return std::all_of(evaluators.begin(), evaluators.end(),
                       [](const Evaluator& ev) { return ev.exhausted(); });
  };
  while (!all_spent()) {
    if (execution == Execution::Parallel && count > 1) {
      std::vector<std::exception_ptr> errors(count);
      std::vector<std::thread> workers;
      workers.reserve(count);
      for (std::size_t k = 0; k < count; ++k) {
        workers.emplace_back([&, k] {
          try {
            segment(k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        });
      }
      for (auto& t : workers) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::size_t k = 0; k < count; ++k) segment(k);
    }
    const bool epoch = std::any_of(crossed.begin(), crossed.end(), [](char c) { return c != 0; });
    if (policy && count > 1 && epoch) {
      migrate(demes, *policy, evaluators, migration_rng);
      ++result.migration_epochs;
    }
  }

  for (const auto& ev : evaluators) {
    result.tasks.push_back({*ev.best(), ev.trace(), ev.used()});
    result.total_evaluations += ev.used();
  }
  return result;
}

}  // namespace

MultitaskResult solve_covns(std::span<const WeightedDigraph> tasks, const VnsConfig& cfg,
                            const MigrationPolicy& policy, Execution execution) {
  return run_demes(tasks, cfg, &policy, execution);
}

MultitaskResult solve_pvns(std::span<const WeightedDigraph> tasks, const VnsConfig& cfg,
                           Execution execution) {
  return run_demes(tasks, cfg, nullptr, execution);
}

}  // namespace covns
