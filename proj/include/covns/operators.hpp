#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "covns/partition.hpp"
#include "covns/rng.hpp"

namespace covns {

/// Successor-generation moves. CE moves re-insert extracted nodes into
/// existing communities; CC moves may also open a new community. The digit
/// is the number of extracted nodes.
enum class OperatorKind { CE1, CE3, CC1, CC3 };

enum class OperatorFamily { CE, CC };

constexpr std::array<OperatorKind, 4> all_operators() {
  return {OperatorKind::CE1, OperatorKind::CE3, OperatorKind::CC1, OperatorKind::CC3};
}

inline std::vector<OperatorKind> default_operators() {
  constexpr auto kinds = all_operators();
  return {kinds.begin(), kinds.end()};
}

constexpr OperatorFamily family(OperatorKind kind) {
  return kind == OperatorKind::CE1 || kind == OperatorKind::CE3 ? OperatorFamily::CE
                                                                 : OperatorFamily::CC;
}

constexpr int arity(OperatorKind kind) {
  return kind == OperatorKind::CE1 || kind == OperatorKind::CC1 ? 1 : 3;
}

/// "ce1", "ce3", "cc1", "cc3".
std::string_view to_string(OperatorKind kind);
OperatorKind parse_operator(std::string_view token);
std::vector<OperatorKind> parse_operator_list(std::string_view comma_separated);

/// One random successor of `p`.
///
/// Picks min(arity, V) distinct nodes. Each is, in turn, pulled out of its
/// community and put back: CE draws uniformly among the remaining nonempty
/// communities other than its own (staying put when there is none), CC draws
/// uniformly among the nonempty communities plus one fresh community. The
/// result is repaired.
Partition apply_operator(OperatorKind kind, const Partition& p, Rng& rng);

}  // namespace covns
