#include "contlogic/lang/modulus_inference.hpp"

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

PLMonotone sum_over_args(const std::vector<Term>& args, const std::vector<PLMonotone>& moduli, const Signature& sig,
                         const Variable& v) {
  PLMonotone total = PLMonotone::zero();
  for (std::size_t i = 0; i < args.size(); ++i) {
    PLMonotone inner = infer_term_modulus(args[i], sig, v);
    if (inner == PLMonotone::zero()) continue;
    total = pl_capped_sum(total, pl_compose(moduli[i], inner));
  }
  return total;
}

PLMonotone formula_modulus(const Formula& f, const Signature& sig, const Variable& v) {
  using K = FormulaNode::Kind;
  switch (f->kind) {
    case K::Atomic:
      return sum_over_args(f->terms, sig.predicate(f->symbol).moduli, sig, v);
    case K::Metric:
      return sum_over_args(f->terms, {PLMonotone::identity(), PLMonotone::identity()}, sig, v);
    case K::ValueVar:
      return f->var == v ? PLMonotone::identity() : PLMonotone::zero();
    case K::Quantifier:
      if (f->var == v) return PLMonotone::zero();
      return formula_modulus(f->children[0], sig, v);
    case K::Med:
    case K::Connective:
      break;
  }
  if (f->kind == K::Connective && f->connective == ConnectiveId::Const) return PLMonotone::zero();
  if (f->kind == K::Connective && f->connective == ConnectiveId::Neg) return formula_modulus(f->children[0], sig, v);
  if (f->kind == K::Connective && f->connective == ConnectiveId::Half) return pl_half(formula_modulus(f->children[0], sig, v));
  PLMonotone total = PLMonotone::zero();
  for (const Formula& c : f->children) total = pl_capped_sum(total, formula_modulus(c, sig, v));
  return total;
}

}  // namespace

PLMonotone infer_term_modulus(const Term& t, const Signature& sig, const Variable& v) {
  if (t->kind == TermNode::Kind::Var) return t->var == v ? PLMonotone::identity() : PLMonotone::zero();
  return sum_over_args(t->args, sig.function(t->function).moduli, sig, v);
}

PLMonotone infer_modulus(const Formula& f, const Signature& sig, const Variable& v) {
  if (!free_vars(f).count(v)) throw StructuralError("variable " + v.name + " is not free in the formula");
  return formula_modulus(f, sig, v);
}

}  // namespace contlogic
