#include "contlogic/unitval/connective.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

constexpr std::array<std::string_view, 8> kNames = {"neg", "half", "monus", "min", "max", "plus_trunc", "absdiff", "const"};

}  // namespace

std::string_view connective_name(ConnectiveId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<ConnectiveId> connective_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<ConnectiveId>(i);
  }
  return std::nullopt;
}

int connective_arity(ConnectiveId id) {
  switch (id) {
    case ConnectiveId::Neg:
    case ConnectiveId::Half:
      return 1;
    case ConnectiveId::Const:
      return 0;
    default:
      return 2;
  }
}

UnitValue neg(const UnitValue& x) { return UnitValue(Rational(1) - x.value()); }
UnitValue half(const UnitValue& x) { return UnitValue(x.value() / Rational(2)); }

UnitValue monus(const UnitValue& x, const UnitValue& y) {
  if (x <= y) return UnitValue::zero();
  return UnitValue(x.value() - y.value());
}

UnitValue vmin(const UnitValue& x, const UnitValue& y) { return y < x ? y : x; }
UnitValue vmax(const UnitValue& x, const UnitValue& y) { return x < y ? y : x; }
UnitValue plus_trunc(const UnitValue& x, const UnitValue& y) { return UnitValue::clamp(x.value() + y.value()); }
UnitValue absdiff(const UnitValue& x, const UnitValue& y) { return x < y ? monus(y, x) : monus(x, y); }

UnitValue apply_connective(ConnectiveId id, std::span<const UnitValue> args, const UnitValue& payload) {
  if (static_cast<int>(args.size()) != connective_arity(id)) {
    throw StructuralError(std::string(connective_name(id)) + " expects " + std::to_string(connective_arity(id)) +
                          " argument(s), got " + std::to_string(args.size()));
  }
  switch (id) {
    case ConnectiveId::Neg: return neg(args[0]);
    case ConnectiveId::Half: return half(args[0]);
    case ConnectiveId::Monus: return monus(args[0], args[1]);
    case ConnectiveId::Min: return vmin(args[0], args[1]);
    case ConnectiveId::Max: return vmax(args[0], args[1]);
    case ConnectiveId::PlusTrunc: return plus_trunc(args[0], args[1]);
    case ConnectiveId::AbsDiff: return absdiff(args[0], args[1]);
    case ConnectiveId::Const: return payload;
  }
  throw StructuralError("unknown connective");
}

UnitValue med(std::span<const UnitValue> values, int n) {
  if (n < 1 || static_cast<long>(values.size()) != 2L * n - 1) {
    throw StructuralError("med_" + std::to_string(n) + " needs " + std::to_string(2L * n - 1) + " values, got " +
                          std::to_string(values.size()));
  }
  std::vector<UnitValue> sorted(values.begin(), values.end());
  std::nth_element(sorted.begin(), sorted.begin() + (n - 1), sorted.end());
  return sorted[n - 1];
}

UnitValue med_by_subsets(std::span<const UnitValue> values, int n) {
  if (n < 1 || static_cast<long>(values.size()) != 2L * n - 1) {
    throw StructuralError("med_" + std::to_string(n) + " needs " + std::to_string(2L * n - 1) + " values");
  }
  const int m = 2 * n - 1;
  if (m > 25) throw DomainError("med_by_subsets limited to 25 arguments");
  UnitValue best = UnitValue::one();
  for (std::uint32_t w = 0; w < (1u << m); ++w) {
    if (__builtin_popcount(w) != n) continue;
    UnitValue mx = UnitValue::zero();
    for (int i = 0; i < m; ++i) {
      if (w & (1u << i)) mx = vmax(mx, values[i]);
    }
    best = vmin(best, mx);
  }
  return best;
}

}  // namespace contlogic
