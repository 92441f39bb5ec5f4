#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "covns/graph.hpp"

namespace covns {

/// Scenario manifest JSON:
///   {"tasks": [graph paths, relative to the manifest], "instances": [names],
///    "algorithm": "covns|pvns|svns", "seed", "n_per_deme",
///    "evals_per_individual", "freq_migr", "prop", "migration_direction",
///    "generator": {...}}
/// Only "tasks" is required; the rest default to the standard settings.
struct ScenarioManifest {
  std::vector<std::string> tasks;
  std::vector<std::string> instances;
  std::string algorithm = "covns";
  std::uint64_t seed = 1;
  std::size_t n_per_deme = 10;
  std::size_t evals_per_individual = 1000;
  double freq_migr = 0.03;
  double prop = 0.05;
  std::string migration_direction = "pull";
  nlohmann::json generator;  // null unless written by the generator
};

nlohmann::json to_json(const ScenarioManifest& manifest);
ScenarioManifest manifest_from_json(const nlohmann::json& j);

ScenarioManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const ScenarioManifest& manifest);

/// Loaded task graphs in manifest order.
struct Scenario {
  std::vector<std::string> names;
  std::vector<WeightedDigraph> graphs;
};

/// Loads and validates every task. All failing files are reported together in
/// one std::runtime_error, one line per file.
Scenario load_scenario(const std::filesystem::path& manifest_path);
Scenario load_scenario(const ScenarioManifest& manifest, const std::filesystem::path& base_dir);

}  // namespace covns
