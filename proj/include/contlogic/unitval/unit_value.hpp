#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "contlogic/unitval/rational.hpp"

namespace contlogic {

/// A truth value: an exact rational in [0,1], with 0 read as "true".
class UnitValue {
 public:
  UnitValue() = default;
  /// Throws DomainError unless 0 <= value <= 1.
  explicit UnitValue(const Rational& value);
  UnitValue(std::int64_t numerator, std::int64_t denominator) : UnitValue(Rational(numerator, denominator)) {}

  static UnitValue zero() { return UnitValue(); }
  static UnitValue one() { return UnitValue(Rational(1)); }
  /// Clamps an arbitrary rational into [0,1].
  static UnitValue clamp(const Rational& value);
  static UnitValue parse(std::string_view text);

  const Rational& value() const { return v_; }
  operator const Rational&() const { return v_; }  // NOLINT(google-explicit-constructor)

  std::int64_t numerator() const { return v_.num(); }
  std::int64_t denominator() const { return v_.den(); }
  bool is_dyadic() const { return v_.is_dyadic(); }
  std::string to_string() const { return v_.to_string(); }

  friend bool operator==(const UnitValue&, const UnitValue&) = default;
  friend std::strong_ordering operator<=>(const UnitValue& a, const UnitValue& b) { return a.v_ <=> b.v_; }

 private:
  Rational v_;
};

std::ostream& operator<<(std::ostream& os, const UnitValue& v);

}  // namespace contlogic

template <>
struct std::hash<contlogic::UnitValue> {
  std::size_t operator()(const contlogic::UnitValue& v) const noexcept { return std::hash<contlogic::Rational>{}(v.value()); }
};
