#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "contlogic/stab/phi_matrix.hpp"

namespace contlogic {

/// Antisymmetric: |phi(a_i, b_j) - phi(a_j, b_i)| >= eps for all i < j.
/// Order: phi(a_i, b_j) <= r and phi(a_j, b_i) >= s for all i < j, with r <= s - eps.
/// Triple: |phi(a_j, b_i) - phi(a_j, b_k)| >= eps for all i < j < k.
enum class LadderKind { Antisymmetric, Order, Triple };

std::string_view ladder_kind_name(LadderKind kind);
/// "antisym", "order" or "triple".
std::optional<LadderKind> ladder_kind_from_name(std::string_view name);

struct LadderWitness {
  LadderKind kind = LadderKind::Antisymmetric;
  UnitValue epsilon;
  /// (row of a_i, column of b_i)
  std::vector<std::pair<int, int>> pairs;
  /// Thresholds of an order ladder.
  std::optional<UnitValue> r;
  std::optional<UnitValue> s;
  int max_len = 0;

  int length() const { return static_cast<int>(pairs.size()); }
  /// The search stopped at its length cap, so longer ladders may exist.
  bool at_bound() const { return length() >= max_len; }
};

/// Longest ladder of the given kind with at most max_len pairs. Among the longest,
/// returns the lexicographically least sequence of (row, column) pairs (for order
/// ladders, with the least (r, s) drawn from the matrix values). Pairs may repeat
/// where the kind allows it. Parallel over first choices; the result does not depend
/// on the thread count. Throws DomainError unless eps > 0 and max_len >= 1.
LadderWitness find_ladder(const PhiMatrix& m, const UnitValue& epsilon, LadderKind kind, int max_len);

/// Re-evaluates the defining inequalities of a stored witness.
bool recheck_ladder(const PhiMatrix& m, const LadderWitness& w);

struct NValue {
  /// Length of the longest triple ladder, which is the least N admitting no ladder of length N + 1.
  int N = 0;
  /// N reached the search cap and is only a lower bound.
  bool at_bound = false;
  LadderWitness witness;
};

/// Throws DomainError for an empty matrix or eps <= 0.
NValue compute_N(const PhiMatrix& m, const UnitValue& epsilon, int max_len = 32);

}  // namespace contlogic
