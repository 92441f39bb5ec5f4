#include "covns/operators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace covns {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::CE1: return "ce1";
    case OperatorKind::CE3: return "ce3";
    case OperatorKind::CC1: return "cc1";
    case OperatorKind::CC3: return "cc3";
  }
  return "?";
}

OperatorKind parse_operator(std::string_view token) {
  for (auto kind : all_operators()) {
    if (to_string(kind) == token) return kind;
  }
  throw std::invalid_argument("unknown operator '" + std::string(token) +
                              "' (expected ce1, ce3, cc1 or cc3)");
}

std::vector<OperatorKind> parse_operator_list(std::string_view comma_separated) {
  std::vector<OperatorKind> kinds;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const auto end = std::min(comma_separated.find(',', start), comma_separated.size());
    kinds.push_back(parse_operator(comma_separated.substr(start, end - start)));
    start = end + 1;
  }
  return kinds;
}

Partition apply_operator(OperatorKind kind, const Partition& p, Rng& rng) {
  const std::size_t n = p.size();
  const std::size_t moves = std::min<std::size_t>(static_cast<std::size_t>(arity(kind)), n);
  const bool may_open = family(kind) == OperatorFamily::CC;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < moves; ++i) {
    std::swap(order[i], order[i + rng.index(n - i)]);
  }

  std::vector<int> labels(p.labels().begin(), p.labels().end());
  int max_label = p.community_count();
  std::vector<int> members(static_cast<std::size_t>(max_label) + moves + 1, 0);
  for (int label : labels) ++members[static_cast<std::size_t>(label)];

  std::vector<int> candidates;
  candidates.reserve(members.size());
  for (std::size_t i = 0; i < moves; ++i) {
    const std::size_t node = order[i];
    const int previous = labels[node];
    --members[static_cast<std::size_t>(previous)];

    candidates.clear();
    for (int label = 1; label <= max_label; ++label) {
      if (members[static_cast<std::size_t>(label)] == 0) continue;
      if (!may_open && label == previous) continue;
      candidates.push_back(label);
    }
    if (may_open) candidates.push_back(max_label + 1);

    int target = previous;
    if (!candidates.empty()) target = candidates[rng.index(candidates.size())];
    if (target > max_label) max_label = target;
    labels[node] = target;
    ++members[static_cast<std::size_t>(target)];
  }
  return repair(labels);
}

}  // namespace covns
