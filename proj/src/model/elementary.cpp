#include "contlogic/model/elementary.hpp"

#include <set>

#include "contlogic/errors.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/util/tuples.hpp"

namespace contlogic {

TVResult is_elementary_substructure(const FiniteStructure& M, const std::vector<std::vector<int>>& A,
                                    const std::vector<TVFormula>& formulas) {
  const Signature& sig = M.signature();
  if (static_cast<int>(A.size()) != sig.sort_count()) throw StructuralError("subset needs one element list per sort");
  std::vector<std::vector<bool>> in_A(sig.sort_count());
  for (int s = 0; s < sig.sort_count(); ++s) {
    in_A[s].assign(M.carrier_size(s), false);
    for (int e : A[s]) {
      if (e < 0 || e >= M.carrier_size(s)) throw StructuralError("subset element out of range");
      in_A[s][e] = true;
    }
  }
  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    const FunctionSymbol& sym = sig.function(f);
    for (std::size_t i = 0; i < M.tuple_count(sym.arg_sorts); ++i) {
      std::vector<int> args = M.tuple_at(sym.arg_sorts, i);
      bool inside = true;
      for (std::size_t k = 0; k < args.size(); ++k) inside = inside && in_A[sym.arg_sorts[k]][args[k]];
      if (inside && !in_A[sym.target_sort][M.apply_at(f, i)]) {
        std::string w = sym.name + "(";
        for (std::size_t k = 0; k < args.size(); ++k) w += (k ? ", " : "") + M.element_name(sym.arg_sorts[k], args[k]);
        throw StructuralError("subset is not closed under " + sym.name + ": " + w + ") = " +
                              M.element_name(sym.target_sort, M.apply_at(f, i)));
      }
    }
  }

  for (std::size_t fi = 0; fi < formulas.size(); ++fi) {
    const TVFormula& tv = formulas[fi];
    std::set<Variable> fv = free_vars(tv.formula);
    fv.erase(tv.y);
    std::vector<Variable> params(fv.begin(), fv.end());
    for (const Variable& v : params) {
      if (v.sort < 0) throw StructuralError("truth-value variable " + v.name + " in a Tarski-Vaught formula");
    }
    std::vector<Variable> order = {tv.y};
    order.insert(order.end(), params.begin(), params.end());
    Evaluator eval(M, tv.formula, order);

    std::vector<int> sizes;
    for (const Variable& v : params) sizes.push_back(static_cast<int>(A[v.sort].size()));
    std::vector<int> args(order.size());
    std::optional<TVWitness> found;
    for_each_tuple(sizes, [&](const std::vector<int>& idx) {
      for (std::size_t k = 0; k < params.size(); ++k) args[k + 1] = A[params[k].sort][idx[k]];
      UnitValue inf_M = UnitValue::one(), inf_A = UnitValue::one();
      for (int b = 0; b < M.carrier_size(tv.y.sort); ++b) {
        args[0] = b;
        UnitValue v = eval(args);
        inf_M = std::min(inf_M, v);
        if (in_A[tv.y.sort][b]) inf_A = std::min(inf_A, v);
      }
      if (inf_M == inf_A) return true;
      TVWitness w;
      w.formula_index = fi;
      w.params = params;
      for (std::size_t k = 0; k < params.size(); ++k) w.tuple.push_back(M.element_name(params[k].sort, args[k + 1]));
      w.inf_over_M = inf_M;
      w.inf_over_A = inf_A;
      found = w;
      return false;
    });
    if (found) return {false, found};
  }
  return {true, std::nullopt};
}

}  // namespace contlogic
