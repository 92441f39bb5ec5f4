#include "covns/benchgen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "covns/graph_io.hpp"
#include "covns/scenario.hpp"

namespace covns {

std::string_view to_string(GrowthMode mode) { return mode == GrowthMode::OI ? "OI" : "UI"; }

GrowthMode parse_growth_mode(std::string_view token) {
  if (token == "oi" || token == "OI") return GrowthMode::OI;
  if (token == "ui" || token == "UI") return GrowthMode::UI;
  throw std::invalid_argument("unknown mode '" + std::string(token) + "' (expected oi or ui)");
}

void GenSpec::validate() const {
  if (base_node_count == 0) throw std::invalid_argument("base node count must be positive");
  if (instance_count == 0) throw std::invalid_argument("instance count must be positive");
  if (instance_count > 1 && increment == 0) {
    throw std::invalid_argument("increment must be positive when more than one instance is built");
  }
  if (communities == 0 || communities > base_node_count) {
    throw std::invalid_argument("communities must lie in [1, base node count]");
  }
  if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0)) {
    throw std::invalid_argument("probabilities must satisfy 0 <= p_out < p_in <= 1");
  }
  for (const auto& r : {intra_weight, inter_weight}) {
    if (!(r.lo >= 0.0 && r.lo < r.hi)) {
      throw std::invalid_argument("weight ranges must satisfy 0 <= lo < hi");
    }
  }
}

nlohmann::json to_json(const GenSpec& spec) {
  return {{"base_node_count", spec.base_node_count},
          {"increment", spec.increment},
          {"instance_count", spec.instance_count},
          {"communities", spec.communities},
          {"p_in", spec.p_in},
          {"p_out", spec.p_out},
          {"intra_weight_range", {spec.intra_weight.lo, spec.intra_weight.hi}},
          {"inter_weight_range", {spec.inter_weight.lo, spec.inter_weight.hi}},
          {"mode", to_string(spec.mode)},
          {"seed", spec.seed}};
}

GenSpec gen_spec_from_json(const nlohmann::json& j) {
  GenSpec spec;
  spec.base_node_count = j.at("base_node_count").get<std::size_t>();
  spec.increment = j.at("increment").get<std::size_t>();
  spec.instance_count = j.at("instance_count").get<std::size_t>();
  spec.communities = j.at("communities").get<std::size_t>();
  spec.p_in = j.at("p_in").get<double>();
  spec.p_out = j.at("p_out").get<double>();
  spec.intra_weight = {j.at("intra_weight_range").at(0).get<double>(),
                       j.at("intra_weight_range").at(1).get<double>()};
  spec.inter_weight = {j.at("inter_weight_range").at(0).get<double>(),
                       j.at("inter_weight_range").at(1).get<double>()};
  spec.mode = parse_growth_mode(j.at("mode").get<std::string>());
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

std::string instance_name(GrowthMode mode, std::size_t node_count, std::size_t communities) {
  return std::string(to_string(mode)) + "_" + std::to_string(node_count) + "_" +
         std::to_string(communities);
}

namespace {

void sample_pair(WeightedDigraph::Matrix& w, Eigen::Index v, Eigen::Index u, bool same,
                 const GenSpec& spec, Rng& rng) {
  if (!rng.bernoulli(same ? spec.p_in : spec.p_out)) return;
  const WeightRange& r = same ? spec.intra_weight : spec.inter_weight;
  w(v, u) = rng.uniform(r.lo, r.hi);
}

}  // namespace

Instance generate_base(const GenSpec& spec, Rng& rng) {
  spec.validate();
  const std::size_t n = spec.base_node_count;
  const std::size_t m = spec.communities;

  std::vector<std::size_t> nodes(n);
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i) std::swap(nodes[i], nodes[rng.index(i + 1)]);

  // M-1 distinct cut points among the n-1 gaps of the shuffled node list.
  std::vector<std::size_t> gaps(n - 1);
  std::iota(gaps.begin(), gaps.end(), std::size_t{1});
  for (std::size_t i = 0; i + 1 < m; ++i) std::swap(gaps[i], gaps[i + rng.index(gaps.size() - i)]);
  std::vector<std::size_t> cuts(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(m - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);

  std::vector<int> community(n);
  std::size_t position = 0;
  for (std::size_t c = 0; c < m; ++c) {
    for (; position < cuts[c]; ++position) community[nodes[position]] = static_cast<int>(c) + 1;
  }

  const auto size = static_cast<Eigen::Index>(n);
  WeightedDigraph::Matrix w = WeightedDigraph::Matrix::Zero(size, size);
  for (Eigen::Index v = 0; v < size; ++v) {
    for (Eigen::Index u = 0; u < size; ++u) {
      if (u == v) continue;
      sample_pair(w, v, u, community[static_cast<std::size_t>(v)] == community[static_cast<std::size_t>(u)], spec, rng);
    }
  }
  return {instance_name(spec.mode, n, m), WeightedDigraph(std::move(w)), repair(community)};
}

Instance extend_instance(const Instance& base, std::size_t added, GrowthMode mode,
                         const GenSpec& spec, Rng& rng) {
  if (added == 0) throw std::invalid_argument("extend_instance: at least one node must be added");
  const std::size_t old_n = base.graph.node_count();
  const std::size_t n = old_n + added;
  const std::size_t offset = mode == GrowthMode::UI ? added : 0;
  const std::size_t first_new = mode == GrowthMode::UI ? 0 : old_n;
  auto is_new = [&](std::size_t v) { return v >= first_new && v < first_new + added; };

  std::vector<int> community(n);
  for (std::size_t v = 0; v < old_n; ++v) community[v + offset] = base.ground_truth[v];
  const auto m = static_cast<std::size_t>(base.ground_truth.community_count());
  for (std::size_t j = 0; j < added; ++j) {
    community[first_new + j] = static_cast<int>(rng.index(m)) + 1;
  }

  const auto size = static_cast<Eigen::Index>(n);
  WeightedDigraph::Matrix w = WeightedDigraph::Matrix::Zero(size, size);
  const auto old_size = static_cast<Eigen::Index>(old_n);
  const auto shift = static_cast<Eigen::Index>(offset);
  w.block(shift, shift, old_size, old_size) = base.graph.weights();
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || !(is_new(v) || is_new(u))) continue;
      sample_pair(w, static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u),
                  community[v] == community[u], spec, rng);
    }
  }
  return {instance_name(mode, n, m), WeightedDigraph(std::move(w)), repair(community)};
}

MultitaskScenario generate_scenario(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  MultitaskScenario scenario{spec, {}};
  scenario.instances.push_back(generate_base(spec, rng));
  for (std::size_t i = 1; i < spec.instance_count; ++i) {
    scenario.instances.push_back(
        extend_instance(scenario.instances.back(), spec.increment, spec.mode, spec, rng));
  }
  return scenario;
}

std::filesystem::path write_scenario(const MultitaskScenario& scenario,
                                     const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  ScenarioManifest manifest;
  for (const auto& instance : scenario.instances) {
    const std::string file = instance.name + ".json";
    write_graph_file(directory / file, instance.graph, instance.ground_truth);
    manifest.tasks.push_back(file);
    manifest.instances.push_back(instance.name);
  }
  manifest.generator = to_json(scenario.spec);
  const auto path = directory / "manifest.json";
  write_manifest(path, manifest);
  return path;
}

}  // namespace covns
