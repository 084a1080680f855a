#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/model/structure.hpp"

namespace contlogic {

/// A formula phi(y, x...) with its distinguished variable y; the remaining free
/// variables are the parameters, taken in sorted order.
struct TVFormula {
  Formula formula;
  Variable y;
};

struct TVWitness {
  std::size_t formula_index = 0;
  /// Parameter variables and the element names assigned to them.
  std::vector<Variable> params;
  std::vector<std::string> tuple;
  UnitValue inf_over_M;
  UnitValue inf_over_A;
};

struct TVResult {
  bool holds = true;
  std::optional<TVWitness> witness;
};

/// Tarski-Vaught test relative to the listed formulas: A (one list of element
/// indices per sort) passes when, for every formula and every parameter tuple
/// from A, the infimum over y in M equals the infimum over y in A. Throws
/// StructuralError, naming the witness, when A is not closed under the functions.
TVResult is_elementary_substructure(const FiniteStructure& M, const std::vector<std::vector<int>>& A,
                                    const std::vector<TVFormula>& formulas);

}  // namespace contlogic
