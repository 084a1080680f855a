#include "contlogic/unitval/flim.hpp"

#include "contlogic/errors.hpp"

namespace contlogic {

ForcedLimitTrace flim_prefix(std::span<const UnitValue> seq) {
  if (seq.empty()) throw StructuralError("flim_prefix needs a non-empty sequence");
  if (seq.size() > 62) throw DomainError("flim_prefix supports prefixes of length at most 62");
  ForcedLimitTrace trace;
  trace.input_prefix.assign(seq.begin(), seq.end());
  trace.modified_prefix.reserve(seq.size());
  trace.modified_prefix.push_back(seq[0]);
  for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
    const Rational& prev = trace.modified_prefix.back().value();
    Rational step = Rational::pow2_neg(static_cast<int>(n) + 1);
    Rational lo = prev - step;
    Rational hi = prev + step;
    Rational next = seq[n + 1].value();
    if (next < lo) next = lo;
    if (next > hi) next = hi;
    trace.modified_prefix.push_back(UnitValue(next));
  }
  trace.error_bound = UnitValue(Rational::pow2_neg(static_cast<int>(seq.size()) - 1));
  return trace;
}

}  // namespace contlogic
