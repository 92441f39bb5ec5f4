#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "covns/partition.hpp"

namespace covns {

template <typename Scalar>
struct BasicEdge {
  std::size_t source;
  std::size_t target;
  Scalar weight;
};

/// Dense weighted directed graph without self-loops.
///
/// Node indices are 0-based. The adjacency matrix is stored row-major so the
/// canonical (source, target) double loop walks memory contiguously. Strengths
/// and the total weight are computed once at construction; the object is
/// immutable afterwards and may be shared freely across threads.
template <typename Scalar>
class BasicWeightedDigraph {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BasicWeightedDigraph(Matrix weights) : weights_(std::move(weights)) {
    if (weights_.rows() != weights_.cols()) {
      throw std::invalid_argument("graph: adjacency matrix must be square");
    }
    if (weights_.rows() == 0) throw std::invalid_argument("graph: node_count must be positive");
    const Eigen::Index n = weights_.rows();
    in_strength_ = Vector::Zero(n);
    out_strength_ = Vector::Zero(n);
    for (Eigen::Index v = 0; v < n; ++v) {
      for (Eigen::Index u = 0; u < n; ++u) {
        const Scalar w = weights_(v, u);
        if (!std::isfinite(static_cast<double>(w)) || w < Scalar(0)) {
          throw std::invalid_argument("graph: weight (" + std::to_string(v + 1) + ", " +
                                      std::to_string(u + 1) + ") is negative or not finite");
        }
        if (v == u && w != Scalar(0)) {
          throw std::invalid_argument("graph: self-loop on node " + std::to_string(v + 1));
        }
        out_strength_(v) += w;
        in_strength_(u) += w;
      }
    }
    total_weight_ = Scalar(0);
    for (Eigen::Index v = 0; v < n; ++v) total_weight_ += out_strength_(v);
  }

  std::size_t node_count() const { return static_cast<std::size_t>(weights_.rows()); }
  const Matrix& weights() const { return weights_; }
  Scalar weight(std::size_t source, std::size_t target) const {
    return weights_(static_cast<Eigen::Index>(source), static_cast<Eigen::Index>(target));
  }
  /// s_v^in: column sums.
  const Vector& in_strength() const { return in_strength_; }
  /// s_v^out: row sums.
  const Vector& out_strength() const { return out_strength_; }
  /// Sum of out-strengths in node order.
  Scalar total_weight() const { return total_weight_; }

 private:
  Matrix weights_;
  Vector in_strength_;
  Vector out_strength_;
  Scalar total_weight_{};
};

using WeightedDigraph = BasicWeightedDigraph<double>;
using Edge = BasicEdge<double>;

/// Builds a graph from an edge list over nodes 0..node_count-1. Unlisted pairs
/// get weight zero. Rejects self-loops, negative weights, duplicate pairs and
/// out-of-range indices.
template <typename Scalar>
BasicWeightedDigraph<Scalar> build_graph(std::span<const BasicEdge<Scalar>> edges,
                                         std::size_t node_count) {
  using Graph = BasicWeightedDigraph<Scalar>;
  if (node_count == 0) throw std::invalid_argument("build_graph: node_count must be positive");
  const auto n = static_cast<Eigen::Index>(node_count);
  typename Graph::Matrix weights = Graph::Matrix::Zero(n, n);
  std::vector<bool> seen(node_count * node_count, false);
  for (const auto& e : edges) {
    const std::string where =
        "edge (" + std::to_string(e.source + 1) + ", " + std::to_string(e.target + 1) + ")";
    if (e.source >= node_count || e.target >= node_count) {
      throw std::invalid_argument("build_graph: " + where + " references a node outside 1.." +
                                  std::to_string(node_count));
    }
    if (e.source == e.target) throw std::invalid_argument("build_graph: " + where + " is a self-loop");
    if (!(e.weight >= Scalar(0)) || !std::isfinite(static_cast<double>(e.weight))) {
      throw std::invalid_argument("build_graph: " + where + " has a negative or non-finite weight");
    }
    const std::size_t slot = e.source * node_count + e.target;
    if (seen[slot]) throw std::invalid_argument("build_graph: duplicate " + where);
    seen[slot] = true;
    weights(static_cast<Eigen::Index>(e.source), static_cast<Eigen::Index>(e.target)) = e.weight;
  }
  return Graph(std::move(weights));
}

inline WeightedDigraph build_graph(const std::vector<Edge>& edges, std::size_t node_count) {
  return build_graph<double>(std::span<const Edge>(edges), node_count);
}

namespace detail {

template <typename Scalar>
void check_evaluable(const BasicWeightedDigraph<Scalar>& g, const Partition& p, const char* who) {
  if (p.size() != g.node_count()) {
    throw std::invalid_argument(std::string(who) + ": partition has " + std::to_string(p.size()) +
                                " labels for a graph of " + std::to_string(g.node_count()) +
                                " nodes");
  }
  if (!(g.total_weight() > Scalar(0))) {
    throw std::invalid_argument(std::string(who) + ": graph has zero total weight");
  }
}

}  // namespace detail

/// Weighted directed modularity
///   Q = 1/W * sum_v sum_u [w(v,u) - s_in(v) * s_out(u) / W] * delta(v,u)
/// summed in row-major (v outer, u inner) order.
template <typename Scalar>
Scalar modularity(const BasicWeightedDigraph<Scalar>& g, const Partition& p) {
  detail::check_evaluable(g, p, "modularity");
  const std::size_t n = g.node_count();
  const Scalar total = g.total_weight();
  const auto& w = g.weights();
  const auto& s_in = g.in_strength();
  const auto& s_out = g.out_strength();
  Scalar acc(0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto vi = static_cast<Eigen::Index>(v);
    const int label = p[v];
    for (std::size_t u = 0; u < n; ++u) {
      if (p[u] != label) continue;
      const auto ui = static_cast<Eigen::Index>(u);
      acc += w(vi, ui) - s_in(vi) * s_out(ui) / total;
    }
  }
  return acc / total;
}

/// Q(p') - Q(p) where p' moves `node` to `new_label`. A label above
/// p.community_count() denotes a fresh singleton community.
template <typename Scalar>
Scalar modularity_delta(const BasicWeightedDigraph<Scalar>& g, const Partition& p,
                        std::size_t node, int new_label) {
  detail::check_evaluable(g, p, "modularity_delta");
  if (node >= p.size()) {
    throw std::invalid_argument("modularity_delta: node " + std::to_string(node + 1) +
                                " out of range");
  }
  if (new_label < 1) throw std::invalid_argument("modularity_delta: label must be positive");
  const int old_label = p[node];
  if (new_label == old_label) return Scalar(0);

  const Scalar total = g.total_weight();
  const auto& s_in = g.in_strength();
  const auto& s_out = g.out_strength();
  const auto a = static_cast<Eigen::Index>(node);
  Scalar gain(0);
  Scalar loss(0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (x == node) continue;
    const int label = p[x];
    if (label != new_label && label != old_label) continue;
    const auto b = static_cast<Eigen::Index>(x);
    const Scalar pair = g.weights()(a, b) - s_in(a) * s_out(b) / total + g.weights()(b, a) -
                        s_in(b) * s_out(a) / total;
    (label == new_label ? gain : loss) += pair;
  }
  return (gain - loss) / total;
}

}  // namespace covns
