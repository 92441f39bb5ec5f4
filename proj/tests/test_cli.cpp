#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "benchmark_means.hpp"
#include "covns/benchgen.hpp"
#include "covns/cli.hpp"
#include "covns/harness.hpp"
#include "covns/scenario.hpp"

using namespace covns;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("covns_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path toy_scenario(const fs::path& dir, std::size_t count) {
  GenSpec spec;
  spec.base_node_count = 10;
  spec.increment = 4;
  spec.instance_count = count;
  spec.communities = 3;
  spec.seed = 3;
  return write_scenario(generate_scenario(spec), dir);
}

}  // namespace

TEST_CASE("defaults match the standard parametrization") {
  CHECK(defaults::n_per_deme == 10);
  CHECK(defaults::evals_per_individual == 1000);
  CHECK(defaults::freq_migr == 0.03);
  CHECK(defaults::prop == 0.05);
  CHECK(defaults::runs == 20);
  CHECK(defaults::base_node_count == 50);
  CHECK(defaults::increment == 5);
  CHECK(defaults::instance_count == 11);
  CHECK(defaults::communities == 8);
  CHECK(defaults::p_in == 0.85);
  CHECK(defaults::p_out == 0.15);
  CHECK(MigrationPolicy{}.freq_migr == defaults::freq_migr);
  CHECK(MigrationPolicy{}.prop == defaults::prop);
  CHECK(VnsConfig{}.population_size == defaults::n_per_deme);
  CHECK(VnsConfig{}.evaluation_budget == defaults::n_per_deme * defaults::evals_per_individual);

  // A manifest listing only tasks leaves every solver setting at its default.
  const auto dir = scratch("defaults");
  const auto manifest = toy_scenario(dir / "s", 1);
  ScenarioManifest bare;
  bare.tasks = read_manifest(manifest).tasks;
  std::ofstream(dir / "s" / "bare.json") << json{{"tasks", bare.tasks}}.dump();
  const auto r = cli({"--json", "solve", "--algorithm", "svns", "--scenario", (dir / "s" / "bare.json").string()});
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["config"]["n_per_deme"] == 10);
  CHECK(doc["config"]["evals_per_individual"] == 1000);
  CHECK(doc["config"]["freq_migr"] == 0.03);
  CHECK(doc["config"]["prop"] == 0.05);
  CHECK(doc["config"]["migration_direction"] == "pull");
  CHECK(doc["total_evaluations"] == 10000);
  fs::remove_all(dir);
}

TEST_CASE("generate") {
  const auto dir = scratch("generate");
  SUBCASE("defaults give eleven OI instances") {
    const auto r = cli({"generate", "--out", (dir / "full").string()});
    REQUIRE(r.code == kExitOk);
    const auto manifest = read_manifest(dir / "full" / "manifest.json");
    REQUIRE(manifest.instances.size() == 11);
    CHECK(manifest.instances.front() == "OI_50_8");
    CHECK(manifest.instances.back() == "OI_100_8");
    CHECK(fs::exists(dir / "full" / "OI_75_8.json"));
    const GenSpec spec = gen_spec_from_json(manifest.generator);
    CHECK(spec.p_in == 0.85);
    CHECK(spec.p_out == 0.15);
    CHECK(spec.intra_weight.lo == 10.0);
    CHECK(spec.intra_weight.hi == 20.0);
  }
  SUBCASE("a single instance") {
    const auto r = cli({"--json", "generate", "--count", "1", "--mode", "ui", "--out", (dir / "one").string()});
    REQUIRE(r.code == kExitOk);
    CHECK(json::parse(r.out)["instances"] == json{"UI_50_8"});
    CHECK(read_manifest(dir / "one" / "manifest.json").tasks.size() == 1);
  }
  SUBCASE("usage errors") {
    CHECK(cli({"generate"}).code == kExitUsage);
    CHECK(cli({"generate", "--mode", "zz", "--out", (dir / "x").string()}).code == kExitUsage);
    CHECK(cli({"generate", "--communities", "60", "--out", (dir / "x").string()}).code == kExitUsage);
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
  }
  fs::remove_all(dir);
}

TEST_CASE("solve") {
  const auto dir = scratch("solve");
  const auto one = toy_scenario(dir / "one", 1);
  const auto two = toy_scenario(dir / "two", 2);
  const std::vector<std::string> small{"--n", "5", "--evals-scale", "80", "--seed", "9"};
  auto run = [&](const std::string& algorithm, const fs::path& manifest) {
    std::vector<std::string> args{"--json", "solve", "--algorithm", algorithm, "--scenario", manifest.string()};
    args.insert(args.end(), small.begin(), small.end());
    const auto r = cli(args);
    REQUIRE(r.code == kExitOk);
    return json::parse(r.out);
  };

  SUBCASE("one task: covns matches svns") {
    const json co = run("covns", one), sv = run("svns", one);
    CHECK(co["tasks"][0]["fitness"] == sv["tasks"][0]["fitness"]);
    CHECK(co["tasks"][0]["partition"] == sv["tasks"][0]["partition"]);
  }
  SUBCASE("two tasks: output matches the library") {
    const json doc = run("covns", two);
    const Scenario scenario = load_scenario(two);
    VnsConfig cfg;
    cfg.population_size = 5;
    cfg.evaluation_budget = 400;
    cfg.seed = 9;
    const auto lib = solve_covns(scenario.graphs, cfg, MigrationPolicy{});
    REQUIRE(doc["tasks"].size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(doc["tasks"][k]["fitness"].get<double>() == lib.tasks[k].best.fitness);
      CHECK(doc["tasks"][k]["evaluations"] == 400);
    }
    CHECK(doc["total_evaluations"] == 800);
  }
  SUBCASE("outputs and traces") {
    const auto r = cli({"solve", "--algorithm", "pvns", "--scenario", two.string(), "--n", "5",
                        "--evals-scale", "20", "--out", (dir / "best.json").string(), "--trace-dir",
                        (dir / "traces").string(), "--parallel"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("OI_14_3\t") != std::string::npos);
    std::ifstream trace(dir / "traces" / "OI_14_3_trace.csv");
    std::string header;
    std::getline(trace, header);
    CHECK(header == "evaluation_index,best_fitness_so_far");
    CHECK(json::parse(std::ifstream(dir / "best.json"))["tasks"].size() == 2);
  }
  SUBCASE("errors") {
    const auto missing = cli({"solve", "--algorithm", "covns", "--scenario", (dir / "nope.json").string()});
    CHECK(missing.code == kExitUsage);
    CHECK(missing.err.find("nope.json") != std::string::npos);
    CHECK(cli({"solve", "--algorithm", "ga", "--scenario", two.string()}).code == kExitUsage);
    CHECK(cli({"solve", "--algorithm", "covns", "--scenario", two.string(), "--operators", "ce2"}).code ==
          kExitUsage);
    CHECK(cli({"solve", "--algorithm", "covns", "--scenario", two.string(), "--n", "5", "--evals-scale",
               "1"}).code == kExitUsage);
  }
  fs::remove_all(dir);
}

TEST_CASE("report") {
  const auto dir = scratch("report");
  {
    std::ofstream csv(dir / "oi.csv");
    csv << "algorithm,instance,run_index,best_fitness\n";
    const auto m = reference::oi_means();
    for (int a = 0; a < 3; ++a) {
      for (int i = 0; i < 11; ++i) {
        csv << reference::kAlgorithms[static_cast<std::size_t>(a)] << ',' << reference::instance("OI", i)
            << ",0," << m(a, i) << '\n';
      }
    }
    std::ofstream single(dir / "single.csv");
    single << "algorithm,instance,fitness\ncovns,a,0.3\ncovns,b,0.2\n";
    std::ofstream bad(dir / "bad.csv");
    bad << "algorithm,instance,fitness\ncovns,a,0.3\ncovns,b\n";
  }

  const auto r = cli({"--json", "report", "--results", (dir / "oi.csv").string(), "--csv",
                      (dir / "report.csv").string()});
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["control"] == "covns");
  CHECK(std::abs(doc["mean_ranks"]["covns"].get<double>() - 1.0) < 1e-4);
  CHECK(std::abs(doc["mean_ranks"]["pvns"].get<double>() - 2.7273) < 1e-4);
  CHECK(std::abs(doc["mean_ranks"]["svns"].get<double>() - 2.2727) < 1e-4);
  for (const auto& row : doc["posthoc"]) {
    const double expected = row["algorithm"] == "pvns" ? 0.000051 : 0.002838;
    CHECK(std::abs(row["unadjusted_p"].get<double>() - expected) <= 1e-6);
  }
  CHECK(fs::exists(dir / "report.csv"));

  const auto text = cli({"report", "--results", (dir / "oi.csv").string()});
  CHECK(text.out.find("0.000051") != std::string::npos);
  CHECK(text.out.find("0.002838") != std::string::npos);

  const auto single = cli({"report", "--results", (dir / "single.csv").string()});
  REQUIRE(single.code == kExitOk);
  CHECK(single.out.find("Holm") == std::string::npos);
  CHECK(json::parse(cli({"--json", "report", "--results", (dir / "single.csv").string()}).out)["posthoc"].empty());

  const auto bad = cli({"report", "--results", (dir / "bad.csv").string()});
  CHECK(bad.code == kExitFailure);
  CHECK(bad.err.find("bad.csv:3") != std::string::npos);
  CHECK(cli({"report", "--results", (dir / "none.csv").string()}).code == kExitUsage);
  CHECK(cli({"report", "--results", (dir / "oi.csv").string(), "--control", "ga"}).code != kExitOk);
  fs::remove_all(dir);
}

TEST_CASE("experiment smoke run through the CLI") {
  const auto dir = scratch("experiment");
  const auto manifest = toy_scenario(dir / "s", 2);
  const auto r = cli({"experiment", "--scenario", manifest.string(), "--runs", "2", "--n", "4",
                      "--evals-scale", "30", "--workers", "2", "--out", (dir / "out").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("results written to") != std::string::npos);
  CHECK(r.out.find("covns") != std::string::npos);
  CHECK(r.out.find("OI_14_3") != std::string::npos);
  CHECK(r.out.find("Holm") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "results.csv"));
  CHECK(cli({"experiment", "--scenario", manifest.string(), "--algorithms", "covns,ga", "--out",
             (dir / "o2").string()}).code == kExitUsage);
  fs::remove_all(dir);
}
