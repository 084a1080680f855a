#pragma once

#include "contlogic/lang/formula.hpp"

namespace contlogic {

/// phi = 0, phi <= r or phi >= r, with r dyadic.
struct Condition {
  enum class Relation { EqualsZero, AtMost, AtLeast };

  Formula formula;
  Relation relation = Relation::EqualsZero;
  UnitValue bound;

  static Condition equals_zero(Formula f) { return {std::move(f), Relation::EqualsZero, UnitValue::zero()}; }
  /// Throws DomainError unless r is dyadic.
  static Condition at_most(Formula f, const UnitValue& r);
  static Condition at_least(Formula f, const UnitValue& r);
};

/// The formula whose vanishing the condition abbreviates: phi -. r for "phi <= r",
/// r -. phi for "phi >= r", phi itself for "phi = 0".
Formula expand_condition(const Condition& c);

}  // namespace contlogic
