#pragma once

#include <span>
#include <vector>

#include "contlogic/unitval/unit_value.hpp"

namespace contlogic {

struct ForcedLimitTrace {
  std::vector<UnitValue> input_prefix;
  std::vector<UnitValue> modified_prefix;
  /// 2^-(K-1) for a prefix of length K.
  UnitValue error_bound;
};

/// Forced-limit recursion on a finite prefix: f_0 = a_0, and f_{n+1} is a_{n+1}
/// clamped into [f_n - 2^-(n+1), f_n + 2^-(n+1)]. Throws StructuralError on empty input.
ForcedLimitTrace flim_prefix(std::span<const UnitValue> seq);

}  // namespace contlogic
