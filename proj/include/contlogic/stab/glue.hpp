#pragma once

#include <vector>

#include "contlogic/lang/formula.hpp"
#include "contlogic/lang/signature.hpp"

namespace contlogic {

/// chi(x, y, z, t, w) = min(phi(x, y), d(t, w)) +. min(psi(x, z), not d(t, w)).
/// With d(t, w) = 1 chi reduces to phi, with t = w to psi.
/// Throws StructuralError when t and w differ in sort or coincide, when t or w occur
/// free in phi or psi, when a shared variable is not free in both formulas, when a
/// variable name is used with two sorts, or when the non-shared variables overlap.
Formula glue_formula(const Signature& sig, const Formula& phi, const Formula& psi, const std::vector<Variable>& shared_x,
                     const Variable& t, const Variable& w);

}  // namespace contlogic
