#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "contlogic/unitval/unit_value.hpp"

namespace contlogic {

enum class ConnectiveId { Neg, Half, Monus, Min, Max, PlusTrunc, AbsDiff, Const };

std::string_view connective_name(ConnectiveId id);
std::optional<ConnectiveId> connective_from_name(std::string_view name);
/// Number of arguments the connective takes (Const takes none).
int connective_arity(ConnectiveId id);

// The primitive system {neg, half, monus} ...
UnitValue neg(const UnitValue& x);
UnitValue half(const UnitValue& x);
UnitValue monus(const UnitValue& x, const UnitValue& y);
// ... and the derived connectives, computed directly.
UnitValue vmin(const UnitValue& x, const UnitValue& y);
UnitValue vmax(const UnitValue& x, const UnitValue& y);
UnitValue plus_trunc(const UnitValue& x, const UnitValue& y);
UnitValue absdiff(const UnitValue& x, const UnitValue& y);

/// Evaluates a connective. `payload` is the value of Const and ignored otherwise.
/// Throws StructuralError on an arity mismatch.
UnitValue apply_connective(ConnectiveId id, std::span<const UnitValue> args,
                           const UnitValue& payload = UnitValue::zero());

/// med_n over exactly 2n-1 values: the n-th smallest.
UnitValue med(std::span<const UnitValue> values, int n);

/// med_n by its defining min-over-n-subsets-of-max formula. Exponential; for checking.
UnitValue med_by_subsets(std::span<const UnitValue> values, int n);

}  // namespace contlogic
