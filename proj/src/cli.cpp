#include "covns/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "covns/benchgen.hpp"
#include "covns/graph_io.hpp"
#include "covns/harness.hpp"
#include "covns/scenario.hpp"
#include "covns/stats.hpp"

namespace covns {

namespace fs = std::filesystem;

namespace {

/// Raised for bad flag values and missing inputs; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MigrationDirection parse_direction(const std::string& token) {
  if (token == "pull") return MigrationDirection::Pull;
  if (token == "push") return MigrationDirection::Push;
  throw UsageError("unknown migration direction '" + token + "' (expected pull or push)");
}

void require_file(const fs::path& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw UsageError(std::string(what) + " '" + path.string() + "' does not exist");
  }
}

template <typename T>
T usage_guard(auto&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string fixed(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(6);
  s << x;
  return s.str();
}

// Solver flags that fall back to the manifest when not given on the command line.
struct SolverFlags {
  std::string algorithm = "covns";
  std::uint64_t seed = 1;
  std::size_t n = defaults::n_per_deme;
  std::size_t evals_scale = defaults::evals_per_individual;
  double freq_migr = defaults::freq_migr;
  double prop = defaults::prop;
  std::string direction = "pull";

  CLI::Option* algorithm_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* scale_opt = nullptr;
  CLI::Option* freq_opt = nullptr;
  CLI::Option* prop_opt = nullptr;
  CLI::Option* direction_opt = nullptr;

  void add_common(CLI::App& app) {
    seed_opt = app.add_option("--seed", seed, "Random seed (default: manifest seed, else 1)");
    n_opt = app.add_option("--n", n, "Individuals per deme / population size")
                ->capture_default_str()
                ->check(CLI::PositiveNumber);
    scale_opt = app.add_option("--evals-scale", evals_scale,
                               "Evaluations per individual; per-task budget is n times this")
                    ->capture_default_str()
                    ->check(CLI::PositiveNumber);
    freq_opt = app.add_option("--freq-migr", freq_migr,
                              "Fraction of the per-deme budget between migrations")
                   ->capture_default_str();
    prop_opt = app.add_option("--prop", prop, "Fraction of a deme migrated per epoch")
                   ->capture_default_str();
    direction_opt = app.add_option("--migration-direction", direction, "pull or push")
                        ->capture_default_str()
                        ->check(CLI::IsMember({"pull", "push"}));
  }

  void merge(const ScenarioManifest& m) {
    if (algorithm_opt && algorithm_opt->count() == 0) algorithm = m.algorithm;
    if (seed_opt->count() == 0) seed = m.seed;
    if (n_opt->count() == 0) n = m.n_per_deme;
    if (scale_opt->count() == 0) evals_scale = m.evals_per_individual;
    if (freq_opt->count() == 0) freq_migr = m.freq_migr;
    if (prop_opt->count() == 0) prop = m.prop;
    if (direction_opt->count() == 0) direction = m.migration_direction;
  }

  MigrationPolicy policy() const {
    MigrationPolicy p;
    p.freq_migr = freq_migr;
    p.prop = prop;
    p.direction = parse_direction(direction);
    usage_guard<int>([&] {
      p.validate();
      return 0;
    });
    return p;
  }
};

nlohmann::json config_json(const SolverFlags& f) {
  return {{"seed", f.seed},
          {"n_per_deme", f.n},
          {"evals_per_individual", f.evals_scale},
          {"freq_migr", f.freq_migr},
          {"prop", f.prop},
          {"migration_direction", f.direction}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coevolutionary VNS for multitask community detection on weighted digraphs",
               "covns"};
  app.require_subcommand(1);
  bool json_output = false;
  app.add_flag("--json", json_output, "Machine-readable output on stdout");

  // generate
  auto* generate = app.add_subcommand("generate", "Write an OI/UI benchmark scenario");
  GenSpec spec;
  std::string mode = "oi";
  fs::path generate_out;
  generate->add_option("--mode", mode, "oi or ui")->capture_default_str()->check(
      CLI::IsMember({"oi", "ui", "OI", "UI"}));
  generate->add_option("--base", spec.base_node_count, "Nodes in the first instance")
      ->capture_default_str();
  generate->add_option("--increment", spec.increment, "Nodes added per instance")
      ->capture_default_str();
  generate->add_option("--count", spec.instance_count, "Number of instances")
      ->capture_default_str();
  generate->add_option("--communities", spec.communities, "Planted communities")
      ->capture_default_str();
  generate->add_option("--p-in", spec.p_in, "Intra-community edge probability")
      ->capture_default_str();
  generate->add_option("--p-out", spec.p_out, "Inter-community edge probability")
      ->capture_default_str();
  generate->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  generate->add_option("--out", generate_out, "Output directory")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Run one solver on a scenario");
  SolverFlags solve_flags;
  fs::path solve_manifest;
  fs::path solve_out;
  fs::path trace_dir;
  std::string operators = "ce1,ce3,cc1,cc3";
  bool parallel = false;
  solve_flags.algorithm_opt =
      solve_cmd->add_option("--algorithm", solve_flags.algorithm, "covns, pvns or svns")
          ->check(CLI::IsMember({"covns", "pvns", "svns"}));
  solve_cmd->add_option("--scenario", solve_manifest, "Scenario manifest")->required();
  solve_flags.add_common(*solve_cmd);
  solve_cmd->add_option("--operators", operators, "Comma-separated subset of ce1,ce3,cc1,cc3")
      ->capture_default_str();
  solve_cmd->add_flag("--parallel", parallel, "Run demes on separate threads between migrations");
  solve_cmd->add_option("--out", solve_out, "Write best partitions as JSON");
  solve_cmd->add_option("--trace-dir", trace_dir, "Write one trace CSV per task");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an algorithm x seed grid");
  SolverFlags exp_flags;
  fs::path exp_manifest;
  fs::path exp_out;
  std::string algorithms = "covns,pvns,svns";
  std::size_t runs = defaults::runs;
  std::size_t workers = 1;
  bool timing = false;
  bool no_traces = false;
  experiment->add_option("--scenario", exp_manifest, "Scenario manifest")->required();
  experiment->add_option("--algorithms", algorithms, "Comma-separated algorithms")
      ->capture_default_str();
  experiment->add_option("--runs", runs, "Independent runs per algorithm")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  exp_flags.add_common(*experiment);
  experiment->add_option("--workers", workers, "Worker threads; 1 is the reference mode")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  experiment->add_flag("--timing", timing, "Record wall-clock time per run");
  experiment->add_flag("--no-traces", no_traces, "Skip per-run trace files");
  experiment->add_option("--out", exp_out, "Output directory")->required();

  // report
  auto* report_cmd = app.add_subcommand("report", "Summarize a results CSV");
  fs::path results_path;
  fs::path report_csv_path;
  std::string control = "covns";
  report_cmd->add_option("--results", results_path, "Results CSV")->required();
  report_cmd->add_option("--control", control, "Control algorithm for the post-hoc test")
      ->capture_default_str();
  report_cmd->add_option("--csv", report_csv_path, "Also write the report as CSV");

  std::vector<const char*> argv{"covns"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) {
      spec.mode = parse_growth_mode(mode);
      usage_guard<int>([&] {
        spec.validate();
        return 0;
      });
      const MultitaskScenario scenario = generate_scenario(spec);
      const fs::path manifest = write_scenario(scenario, generate_out);
      if (json_output) {
        nlohmann::json names = nlohmann::json::array();
        for (const auto& i : scenario.instances) names.push_back(i.name);
        out << nlohmann::json{{"manifest", manifest.string()}, {"instances", names}}.dump() << "\n";
      } else {
        out << manifest.string() << "\n";
      }
      return kExitOk;
    }

    if (*solve_cmd) {
      require_file(solve_manifest, "scenario manifest");
      const ScenarioManifest manifest = read_manifest(solve_manifest);
      solve_flags.merge(manifest);
      const Algorithm algorithm = usage_guard<Algorithm>([&] { return parse_algorithm(solve_flags.algorithm); });
      const MigrationPolicy policy = solve_flags.policy();
      VnsConfig cfg;
      cfg.population_size = solve_flags.n;
      cfg.evaluation_budget = solve_flags.n * solve_flags.evals_scale;
      cfg.seed = solve_flags.seed;
      cfg.operators = usage_guard<std::vector<OperatorKind>>([&] { return parse_operator_list(operators); });
      usage_guard<int>([&] {
        cfg.validate();
        return 0;
      });
      const Scenario scenario = load_scenario(manifest, solve_manifest.parent_path());
      if (algorithm != Algorithm::SVNS && cfg.evaluation_budget < scenario.graphs.size() * cfg.population_size) {
        throw UsageError("per-task budget " + std::to_string(cfg.evaluation_budget) +
                         " cannot cover the shared initialization pool of " +
                         std::to_string(scenario.graphs.size() * cfg.population_size) +
                         " individuals; raise --evals-scale");
      }
      const MultitaskResult result =
          solve(algorithm, scenario.graphs, cfg, policy,
                parallel ? Execution::Parallel : Execution::Sequential);

      nlohmann::json doc = {{"algorithm", to_string(algorithm)},
                            {"config", config_json(solve_flags)},
                            {"total_evaluations", result.total_evaluations},
                            {"tasks", nlohmann::json::array()}};
      for (std::size_t k = 0; k < result.tasks.size(); ++k) {
        const auto& t = result.tasks[k];
        doc["tasks"].push_back({{"instance", scenario.names[k]},
                                {"node_count", scenario.graphs[k].node_count()},
                                {"fitness", t.best.fitness},
                                {"evaluations", t.evaluations},
                                {"partition", partition_to_json(t.best.partition)}});
        if (!trace_dir.empty()) {
          std::ostringstream trace;
          trace << "evaluation_index,best_fitness_so_far\n";
          trace.precision(17);
          for (std::size_t i = 0; i < t.trace.size(); ++i) trace << i + 1 << ',' << t.trace[i] << '\n';
          write_text_file(trace_dir / (scenario.names[k] + "_trace.csv"), trace.str());
        }
      }
      if (!solve_out.empty()) write_text_file(solve_out, doc.dump(2) + "\n");
      if (json_output) {
        out << doc.dump() << "\n";
      } else {
        for (std::size_t k = 0; k < result.tasks.size(); ++k) {
          out << scenario.names[k] << "\t" << fixed(result.tasks[k].best.fitness) << "\n";
        }
      }
      return kExitOk;
    }

    if (*experiment) {
      require_file(exp_manifest, "scenario manifest");
      const ScenarioManifest manifest = read_manifest(exp_manifest);
      exp_flags.merge(manifest);
      ExperimentPlan plan;
      plan.manifest = exp_manifest;
      plan.algorithms.clear();
      std::istringstream list(algorithms);
      for (std::string token; std::getline(list, token, ',');) {
        plan.algorithms.push_back(usage_guard<Algorithm>([&] { return parse_algorithm(token); }));
      }
      plan.run_count = runs;
      plan.base_seed = exp_flags.seed;
      plan.n_per_deme = exp_flags.n;
      plan.evals_per_individual = exp_flags.evals_scale;
      plan.migration = exp_flags.policy();
      plan.workers = workers;
      plan.record_timing = timing;
      plan.save_traces = !no_traces;
      plan.output_dir = exp_out;
      usage_guard<int>([&] {
        plan.validate();
        return 0;
      });
      const ExperimentResult result = run_experiment(plan);
      const StatsReport report = analyze(result.results, to_string(plan.algorithms.front()));
      if (json_output) {
        out << nlohmann::json{{"results", (exp_out / "results.csv").string()},
                              {"config", config_json(exp_flags)},
                              {"report", report_json(report)}}
                   .dump()
            << "\n";
      } else {
        out << "results written to " << (exp_out / "results.csv").string() << "\n\n"
            << format_report(report);
      }
      return kExitOk;
    }

    if (*report_cmd) {
      require_file(results_path, "results file");
      std::ifstream in(results_path);
      const ResultMatrix results = read_results_csv(in, results_path.string());
      const StatsReport report = analyze(results, control);
      if (!report_csv_path.empty()) write_text_file(report_csv_path, report_csv(report));
      if (json_output) {
        out << report_json(report).dump() << "\n";
      } else {
        out << format_report(report);
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace covns
