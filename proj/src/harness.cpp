#include "covns/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "covns/graph_io.hpp"

namespace covns {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::CoVNS: return "covns";
    case Algorithm::PVNS: return "pvns";
    case Algorithm::SVNS: return "svns";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view token) {
  if (token == "covns") return Algorithm::CoVNS;
  if (token == "pvns") return Algorithm::PVNS;
  if (token == "svns") return Algorithm::SVNS;
  throw std::invalid_argument("unknown algorithm '" + std::string(token) +
                              "' (expected covns, pvns or svns)");
}

MultitaskResult solve(Algorithm algorithm, std::span<const WeightedDigraph> tasks,
                      const VnsConfig& cfg, const MigrationPolicy& policy, Execution execution) {
  switch (algorithm) {
    case Algorithm::CoVNS: return solve_covns(tasks, cfg, policy, execution);
    case Algorithm::PVNS: return solve_pvns(tasks, cfg, execution);
    case Algorithm::SVNS: break;
  }
  if (tasks.empty()) throw std::invalid_argument("svns: empty task list");
  MultitaskResult result;
  for (const auto& g : tasks) {
    result.tasks.push_back(solve_svns(g, cfg));
    result.total_evaluations += result.tasks.back().evaluations;
  }
  return result;
}

void ExperimentPlan::validate() const {
  if (algorithms.empty()) throw std::invalid_argument("plan: no algorithms");
  if (run_count == 0) throw std::invalid_argument("plan: run count must be positive");
  if (n_per_deme == 0) throw std::invalid_argument("plan: population size must be positive");
  if (evals_per_individual == 0) {
    throw std::invalid_argument("plan: evaluations per individual must be positive");
  }
  if (workers == 0) throw std::invalid_argument("plan: workers must be positive");
  migration.validate();
}

namespace {

std::string exact(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string trace_csv(const std::vector<double>& trace) {
  std::string out = "evaluation_index,best_fitness_so_far\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += std::to_string(i + 1) + ',' + exact(trace[i]) + '\n';
  }
  return out;
}

struct RunOutput {
  std::vector<RunRecord> records;
  std::size_t evaluations = 0;
};

}  // namespace

std::string results_csv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out << "algorithm,instance,run_index,best_fitness,evaluations_used,wall_time_ms\n";
  for (const auto& r : records) {
    out << to_string(r.algorithm) << ',' << r.instance << ',' << r.run_index << ','
        << exact(r.best_fitness) << ',' << r.evaluations_used << ',' << exact(r.wall_time_ms)
        << '\n';
  }
  return out.str();
}

ExperimentResult run_experiment(const Scenario& scenario, const ExperimentPlan& plan) {
  plan.validate();
  const std::size_t task_count = scenario.graphs.size();
  if (task_count == 0) throw std::invalid_argument("plan: scenario has no tasks");

  struct Job {
    Algorithm algorithm;
    std::size_t run;
  };
  std::vector<Job> jobs;
  for (Algorithm a : plan.algorithms) {
    for (std::size_t r = 0; r < plan.run_count; ++r) jobs.push_back({a, r});
  }
  std::vector<RunOutput> outputs(jobs.size());
  std::vector<char> done(jobs.size(), 0);

  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    VnsConfig cfg;
    cfg.population_size = plan.n_per_deme;
    cfg.evaluation_budget = plan.n_per_deme * plan.evals_per_individual;
    cfg.seed = plan.base_seed + job.run;
    const auto start = std::chrono::steady_clock::now();
    MultitaskResult result = solve(job.algorithm, scenario.graphs, cfg, plan.migration);
    const double elapsed =
        plan.record_timing
            ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count()
            : 0.0;

    RunOutput& out = outputs[j];
    out.evaluations = result.total_evaluations;
    nlohmann::json artifact = {{"algorithm", to_string(job.algorithm)},
                               {"run_index", job.run},
                               {"seed", cfg.seed},
                               {"tasks", nlohmann::json::array()}};
    const std::string stem = std::string(to_string(job.algorithm)) + "_run" + std::to_string(job.run);
    for (std::size_t k = 0; k < task_count; ++k) {
      const SolveResult& task = result.tasks[k];
      out.records.push_back({job.algorithm, scenario.names[k], job.run, task.best.fitness,
                             task.evaluations, elapsed, task.best.partition});
      artifact["tasks"].push_back({{"instance", scenario.names[k]},
                                   {"fitness", task.best.fitness},
                                   {"evaluations", task.evaluations},
                                   {"partition", partition_to_json(task.best.partition)}});
      if (!plan.output_dir.empty() && plan.save_traces) {
        write_text_file(plan.output_dir / "runs" / (stem + "_" + scenario.names[k] + "_trace.csv"),
                        trace_csv(task.trace));
      }
    }
    if (!plan.output_dir.empty()) {
      write_text_file(plan.output_dir / "runs" / (stem + ".json"), artifact.dump(2) + "\n");
    }
    done[j] = 1;
  };

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      try {
        run_job(j);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(plan.workers, jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentResult experiment;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (!done[j]) continue;
    for (auto& record : outputs[j].records) {
      experiment.results.add(to_string(record.algorithm), record.instance, record.best_fitness);
      experiment.records.push_back(std::move(record));
    }
    experiment.ledger.push_back({jobs[j].algorithm, jobs[j].run, outputs[j].evaluations});
  }

  if (!plan.output_dir.empty()) {
    std::string csv = results_csv(experiment.records);
    if (failure) {
      std::string reason = "unknown error";
      try {
        std::rethrow_exception(failure);
      } catch (const std::exception& e) {
        reason = e.what();
      } catch (...) {
      }
      std::replace(reason.begin(), reason.end(), '\n', ' ');
      csv += "# incomplete: " + reason + "\n";
    }
    write_text_file(plan.output_dir / "results.csv", csv);
  }
  if (failure) std::rethrow_exception(failure);
  return experiment;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  return run_experiment(load_scenario(plan.manifest), plan);
}

}  // namespace covns
