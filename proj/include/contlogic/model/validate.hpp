#pragma once

#include <string>
#include <vector>

#include "contlogic/lang/condition.hpp"
#include "contlogic/model/eval.hpp"

namespace contlogic {

struct Violation {
  /// "not-total", "reflexivity", "symmetry", "triangle", "function-modulus" or "predicate-modulus".
  std::string kind;
  /// Sort name for metric violations, symbol name otherwise.
  std::string symbol;
  /// Argument position for modulus violations, -1 otherwise.
  int position = -1;
  /// The elements involved: (x, y) for symmetry, (x, y, z) for the triangle
  /// inequality, (z, w) for modulus checks.
  std::vector<std::string> witnesses;
  /// Remaining arguments of a modulus violation, rendered "(a, _, c)".
  std::string context;
  UnitValue observed;
  UnitValue allowed;
};

struct ValidationReport {
  bool valid = true;
  bool is_metric = true;
  std::size_t violation_count = 0;
  /// The first violations in a fixed enumeration order, at most the cap passed to validate.
  std::vector<Violation> violations;
};

/// Checks the pseudo-metric axioms in every sort and, for every symbol, argument
/// position and pair z, w with the other arguments fixed, that the symbol moves
/// by at most its declared inverse modulus at d(z, w).
ValidationReport validate(const FiniteStructure& M, std::size_t max_reported = 1000);

bool check_condition(const FiniteStructure& M, const EvalEnv& env, const Condition& c);

struct TheoryEntry {
  /// Value of the condition's formula.
  UnitValue value;
  /// Value of the expanded formula; the condition holds iff it is 0.
  UnitValue residual;
  bool satisfied = false;
};

struct TheoryReport {
  bool all_satisfied = true;
  std::vector<TheoryEntry> entries;
};

/// Evaluates each condition as a sentence and lists its exact value.
TheoryReport check_theory(const FiniteStructure& M, const std::vector<Condition>& conditions);

}  // namespace contlogic
