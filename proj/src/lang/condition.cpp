#include "contlogic/lang/condition.hpp"

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

void require_dyadic(const UnitValue& r) {
  if (!r.is_dyadic()) throw DomainError("condition bound " + r.to_string() + " is not dyadic");
}

}  // namespace

Condition Condition::at_most(Formula f, const UnitValue& r) {
  require_dyadic(r);
  return {std::move(f), Relation::AtMost, r};
}

Condition Condition::at_least(Formula f, const UnitValue& r) {
  require_dyadic(r);
  return {std::move(f), Relation::AtLeast, r};
}

Formula expand_condition(const Condition& c) {
  switch (c.relation) {
    case Condition::Relation::AtMost: return f_monus(c.formula, make_const(c.bound));
    case Condition::Relation::AtLeast: return f_monus(make_const(c.bound), c.formula);
    case Condition::Relation::EqualsZero: break;
  }
  return c.formula;
}

}  // namespace contlogic
