#pragma once

#include "contlogic/lang/formula.hpp"
#include "contlogic/lang/signature.hpp"

namespace contlogic {

/// Inverse modulus of a term in the variable v: how far the term's value can move
/// when v moves by t.
PLMonotone infer_term_modulus(const Term& t, const Signature& sig, const Variable& v);

/// Sound (not minimal) inverse modulus of f in its free variable v, valid on every
/// structure whose symbols respect their declared moduli. Throws StructuralError
/// when v is not free in f.
PLMonotone infer_modulus(const Formula& f, const Signature& sig, const Variable& v);

}  // namespace contlogic
