#pragma once

#include "contlogic/lang/formula.hpp"

namespace contlogic {

/// Rewrites |a - b| as (a -. b) +. (b -. a), everywhere.
Formula expand_absdiff(const Formula& f);

/// Prenex form: a block of sup/inf quantifiers over a quantifier-free matrix,
/// equal in value to f on every structure with nonempty carriers. Bound variables
/// are renamed apart first; quantifiers are then pulled out of each connective
/// argument, keeping their kind where the connective is increasing in that
/// argument and swapping sup/inf where it is decreasing.
Formula prenex(const Formula& f);
bool is_prenex(const Formula& f);

/// Rewrites min, max, +. and |.-.| into the primitive system {not, half, -.}.
/// Subformulas that are duplicated by the rewrite are shared, not copied.
Formula desugar(const Formula& f);

/// Replaces a free variable by a term throughout; bound variables that would
/// capture a variable of the term are renamed.
Formula substitute(const Formula& f, const Variable& v, const Term& t);

}  // namespace contlogic
