#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/model/structure.hpp"

namespace contlogic {

/// Assignment of carrier elements to (name, sort) variables, plus values for
/// truth-value variables.
struct EvalEnv {
  std::map<Variable, int> elements;
  std::map<std::string, UnitValue> values;

  EvalEnv& bind(const Variable& v, int element) {
    elements[v] = element;
    return *this;
  }
  EvalEnv& bind_value(const std::string& name, const UnitValue& value) {
    values[name] = value;
    return *this;
  }
};

int eval_term(const FiniteStructure& M, const EvalEnv& env, const Term& t);
/// Exact value of f; sup/inf range over the carrier of the bound variable's sort.
/// Throws StructuralError when a free variable is unbound.
UnitValue eval_formula(const FiniteStructure& M, const EvalEnv& env, const Formula& f);

/// A formula compiled against a structure with a fixed order of free variables,
/// for evaluating it on many assignments. Shared subformulas of quantifier-free
/// formulas are evaluated once per call.
class Evaluator {
 public:
  /// Every free variable of f must appear in `params` or `value_params`.
  Evaluator(const FiniteStructure& M, const Formula& f, std::vector<Variable> params,
            std::vector<std::string> value_params = {});
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;

  UnitValue operator()(std::span<const int> elements, std::span<const UnitValue> values = {}) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace contlogic
