#pragma once

#include <vector>

#include "contlogic/model/structure.hpp"

namespace contlogic {

struct Completion {
  FiniteStructure structure;
  /// For each sort, the class index of every original element.
  std::vector<std::vector<int>> class_of;
};

/// Quotients every carrier by d(a,b) = 0 and re-indexes all tables. Each class is
/// named after its first element. Throws StructuralError, naming the witnesses,
/// when zero distance is not an equivalence or a table is not constant on classes.
Completion complete(const FiniteStructure& M);

/// True when the two structures agree up to renaming elements (brute force over
/// carrier bijections; intended for small carriers).
bool isomorphic(const FiniteStructure& A, const FiniteStructure& B);

}  // namespace contlogic
