#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "covns/rng.hpp"

namespace covns {

/// Label-based encoding of a partition of nodes 0..V-1 into communities.
///
/// Labels are 1-based and always canonical: node 0 carries label 1 and each
/// label seen for the first time, scanning left to right, is one above the
/// largest label seen so far. Two label vectors inducing the same set
/// partition therefore have identical canonical forms. Instances can only be
/// obtained through repair().
class Partition {
 public:
  std::size_t size() const { return labels_.size(); }
  int community_count() const { return communities_; }
  int operator[](std::size_t node) const { return labels_[node]; }
  std::span<const int> labels() const { return labels_; }

  bool operator==(const Partition&) const = default;

  friend Partition repair(std::span<const int> raw);

 private:
  Partition(std::vector<int> labels, int communities)
      : labels_(std::move(labels)), communities_(communities) {}

  std::vector<int> labels_;
  int communities_ = 0;
};

/// Canonical relabeling by first occurrence. Rejects an empty vector and
/// non-positive labels with std::invalid_argument.
Partition repair(std::span<const int> raw);

inline Partition repair(const std::vector<int>& raw) { return repair(std::span<const int>(raw)); }

/// Communities as sorted 0-based node lists; community m-1 holds the nodes labeled m.
std::vector<std::vector<std::size_t>> decode(const Partition& p);

/// Each node labeled uniformly in [1, V], then repaired.
Partition random_partition(std::size_t node_count, Rng& rng);

}  // namespace covns
