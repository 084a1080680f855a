#include "contlogic/unitval/unit_value.hpp"

#include <ostream>

#include "contlogic/errors.hpp"

namespace contlogic {

UnitValue::UnitValue(const Rational& value) : v_(value) {
  if (value < Rational(0) || value > Rational(1)) {
    throw DomainError("truth value " + value.to_string() + " outside [0,1]");
  }
}

UnitValue UnitValue::clamp(const Rational& value) {
  if (value < Rational(0)) return zero();
  if (value > Rational(1)) return one();
  return UnitValue(value);
}

UnitValue UnitValue::parse(std::string_view text) { return UnitValue(Rational::parse(text)); }

std::ostream& operator<<(std::ostream& os, const UnitValue& v) { return os << v.value(); }

}  // namespace contlogic
