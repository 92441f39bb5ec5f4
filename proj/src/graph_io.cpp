#include "covns/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covns {

using nlohmann::json;

json graph_to_json(const WeightedDigraph& g, const std::optional<Partition>& ground_truth) {
  json edges = json::array();
  const std::size_t n = g.node_count();
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      const double w = g.weight(v, u);
      if (w != 0.0) edges.push_back(json::array({v + 1, u + 1, w}));
    }
  }
  json j = {{"node_count", n}, {"edges", std::move(edges)}};
  if (ground_truth) j["ground_truth"] = partition_to_json(*ground_truth);
  return j;
}

GraphFile graph_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph: expected a JSON object");
  if (!j.contains("node_count") || !j["node_count"].is_number_integer() ||
      j["node_count"].get<long long>() < 1) {
    throw std::invalid_argument("graph: \"node_count\" must be a positive integer");
  }
  const auto n = j["node_count"].get<std::size_t>();
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw std::invalid_argument("graph: \"edges\" must be an array");
    std::size_t row = 0;
    for (const auto& e : j["edges"]) {
      ++row;
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || !e[2].is_number()) {
        throw std::invalid_argument("graph: edge #" + std::to_string(row) +
                                    " must be [source, target, weight]");
      }
      const auto s = e[0].get<long long>();
      const auto t = e[1].get<long long>();
      if (s < 1 || t < 1) {
        throw std::invalid_argument("graph: edge #" + std::to_string(row) +
                                    " has an index below 1");
      }
      edges.push_back({static_cast<std::size_t>(s - 1), static_cast<std::size_t>(t - 1),
                       e[2].get<double>()});
    }
  }
  GraphFile file{build_graph(edges, n), std::nullopt};
  if (j.contains("ground_truth") && !j["ground_truth"].is_null()) {
    Partition truth = partition_from_json(j["ground_truth"]);
    if (truth.size() != n) {
      throw std::invalid_argument("graph: ground_truth length does not match node_count");
    }
    file.ground_truth = std::move(truth);
  }
  return file;
}

json partition_to_json(const Partition& p) {
  return json(std::vector<int>(p.labels().begin(), p.labels().end()));
}

Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("partition: expected an array of labels");
  std::vector<int> labels;
  labels.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument("partition: labels must be integers");
    labels.push_back(x.get<int>());
  }
  return repair(labels);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

GraphFile read_graph_file(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  try {
    return graph_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_graph_file(const std::filesystem::path& path, const WeightedDigraph& g,
                      const std::optional<Partition>& ground_truth) {
  write_text_file(path, graph_to_json(g, ground_truth).dump() + "\n");
}

}  // namespace covns
