#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "covns/graph.hpp"
#include "covns/partition.hpp"
#include "covns/rng.hpp"

namespace covns {

/// OI appends new nodes after the existing ones; UI inserts them in front.
enum class GrowthMode { OI, UI };

std::string_view to_string(GrowthMode mode);
GrowthMode parse_growth_mode(std::string_view token);

struct WeightRange {
  double lo;
  double hi;  // exclusive
};

/// Planted-partition benchmark chain parameters.
struct GenSpec {
  std::size_t base_node_count = 50;
  std::size_t increment = 5;
  std::size_t instance_count = 11;
  std::size_t communities = 8;
  double p_in = 0.85;
  double p_out = 0.15;
  WeightRange intra_weight{10.0, 20.0};
  WeightRange inter_weight{0.0, 10.0};
  GrowthMode mode = GrowthMode::OI;
  std::uint64_t seed = 1;

  void validate() const;
};

nlohmann::json to_json(const GenSpec& spec);
GenSpec gen_spec_from_json(const nlohmann::json& j);

struct Instance {
  std::string name;
  WeightedDigraph graph;
  Partition ground_truth;
};

/// Random planted partition (uniform composition into M nonempty parts) and
/// an edge sample over all ordered pairs in row-major order.
Instance generate_base(const GenSpec& spec, Rng& rng);

/// Grows an instance by `added` nodes. Each new node joins one of the
/// existing communities uniformly at random; edges touching a new node are
/// sampled with the same rules as the base graph. The predecessor's adjacency
/// matrix is kept verbatim as the leading (OI) or trailing (UI) block.
Instance extend_instance(const Instance& base, std::size_t added, GrowthMode mode,
                         const GenSpec& spec, Rng& rng);

/// "{OI|UI}_{V}_{M}".
std::string instance_name(GrowthMode mode, std::size_t node_count, std::size_t communities);

struct MultitaskScenario {
  GenSpec spec;
  std::vector<Instance> instances;
};

/// Base instance followed by instance_count-1 successive extensions.
MultitaskScenario generate_scenario(const GenSpec& spec);

/// Writes one graph file per instance plus manifest.json; returns the manifest path.
std::filesystem::path write_scenario(const MultitaskScenario& scenario,
                                     const std::filesystem::path& directory);

}  // namespace covns
