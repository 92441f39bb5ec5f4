#include "covns/scenario.hpp"

#include <stdexcept>

#include "covns/graph_io.hpp"

namespace covns {

using nlohmann::json;

json to_json(const ScenarioManifest& m) {
  json j = {{"tasks", m.tasks},
            {"instances", m.instances},
            {"algorithm", m.algorithm},
            {"seed", m.seed},
            {"n_per_deme", m.n_per_deme},
            {"evals_per_individual", m.evals_per_individual},
            {"freq_migr", m.freq_migr},
            {"prop", m.prop},
            {"migration_direction", m.migration_direction}};
  if (!m.generator.is_null()) j["generator"] = m.generator;
  return j;
}

ScenarioManifest manifest_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tasks") || !j["tasks"].is_array()) {
    throw std::invalid_argument("manifest: expected an object with a \"tasks\" array");
  }
  ScenarioManifest m;
  m.tasks = j["tasks"].get<std::vector<std::string>>();
  if (m.tasks.empty()) throw std::invalid_argument("manifest: \"tasks\" is empty");
  if (j.contains("instances")) m.instances = j["instances"].get<std::vector<std::string>>();
  if (!m.instances.empty() && m.instances.size() != m.tasks.size()) {
    throw std::invalid_argument("manifest: \"instances\" and \"tasks\" differ in length");
  }
  if (m.instances.empty()) {
    for (const auto& t : m.tasks) m.instances.push_back(std::filesystem::path(t).stem().string());
  }
  m.algorithm = j.value("algorithm", m.algorithm);
  m.seed = j.value("seed", m.seed);
  m.n_per_deme = j.value("n_per_deme", m.n_per_deme);
  m.evals_per_individual = j.value("evals_per_individual", m.evals_per_individual);
  m.freq_migr = j.value("freq_migr", m.freq_migr);
  m.prop = j.value("prop", m.prop);
  m.migration_direction = j.value("migration_direction", m.migration_direction);
  if (j.contains("generator")) m.generator = j["generator"];
  return m;
}

ScenarioManifest read_manifest(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  try {
    return manifest_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_manifest(const std::filesystem::path& path, const ScenarioManifest& manifest) {
  write_text_file(path, to_json(manifest).dump(2) + "\n");
}

Scenario load_scenario(const ScenarioManifest& manifest, const std::filesystem::path& base_dir) {
  Scenario scenario;
  std::string failures;
  for (std::size_t i = 0; i < manifest.tasks.size(); ++i) {
    const std::filesystem::path file = base_dir / manifest.tasks[i];
    try {
      GraphFile g = read_graph_file(file);
      if (!(g.graph.total_weight() > 0.0)) {
        throw std::runtime_error(file.string() + ": graph has zero total weight");
      }
      scenario.names.push_back(manifest.instances[i]);
      scenario.graphs.push_back(std::move(g.graph));
    } catch (const std::exception& e) {
      failures += std::string(failures.empty() ? "" : "\n") + e.what();
    }
  }
  if (!failures.empty()) throw std::runtime_error(failures);
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& manifest_path) {
  return load_scenario(read_manifest(manifest_path), manifest_path.parent_path());
}

}  // namespace covns
