#include "covns/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace covns {

Partition repair(std::span<const int> raw) {
  if (raw.empty()) throw std::invalid_argument("repair: empty label vector");
  int max_label = 0;
  for (std::size_t v = 0; v < raw.size(); ++v) {
    if (raw[v] <= 0) {
      throw std::invalid_argument("repair: label " + std::to_string(raw[v]) + " at node " +
                                  std::to_string(v + 1) + " is not positive");
    }
    max_label = std::max(max_label, raw[v]);
  }

  std::vector<int> labels(raw.size());
  int next = 0;
  if (static_cast<std::size_t>(max_label) <= 4 * raw.size() + 16) {
    std::vector<int> mapping(static_cast<std::size_t>(max_label) + 1, 0);
    for (std::size_t v = 0; v < raw.size(); ++v) {
      int& target = mapping[static_cast<std::size_t>(raw[v])];
      if (target == 0) target = ++next;
      labels[v] = target;
    }
  } else {
    std::unordered_map<int, int> mapping;
    for (std::size_t v = 0; v < raw.size(); ++v) {
      auto [it, inserted] = mapping.try_emplace(raw[v], next + 1);
      if (inserted) ++next;
      labels[v] = it->second;
    }
  }
  return Partition(std::move(labels), next);
}

std::vector<std::vector<std::size_t>> decode(const Partition& p) {
  std::vector<std::vector<std::size_t>> communities(static_cast<std::size_t>(p.community_count()));
  for (std::size_t v = 0; v < p.size(); ++v) {
    communities[static_cast<std::size_t>(p[v] - 1)].push_back(v);
  }
  return communities;
}

Partition random_partition(std::size_t node_count, Rng& rng) {
  if (node_count == 0) throw std::invalid_argument("random_partition: node_count must be positive");
  std::vector<int> labels(node_count);
  for (auto& label : labels) label = static_cast<int>(rng.index(node_count)) + 1;
  return repair(labels);
}

}  // namespace covns
