#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "covns/graph.hpp"
#include "covns/partition.hpp"

namespace covns {

/// Contents of a graph file: the graph and an optional planted partition.
struct GraphFile {
  WeightedDigraph graph;
  std::optional<Partition> ground_truth;
};

// Graph JSON: {"node_count": V, "edges": [[source, target, weight], ...],
// "ground_truth": [labels...]}. Indices in the file are 1-based; edges are
// written for every nonzero entry in row-major order.
nlohmann::json graph_to_json(const WeightedDigraph& g,
                             const std::optional<Partition>& ground_truth = std::nullopt);
GraphFile graph_from_json(const nlohmann::json& j);

GraphFile read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const WeightedDigraph& g,
                      const std::optional<Partition>& ground_truth = std::nullopt);

// Partition JSON: a plain array of labels. Written canonical, repaired on read.
nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

/// Reads a whole JSON document, prefixing parse errors with the path.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace covns
