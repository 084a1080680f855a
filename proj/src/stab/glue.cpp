#include "contlogic/stab/glue.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "contlogic/errors.hpp"

namespace contlogic {

Formula glue_formula(const Signature& sig, const Formula& phi, const Formula& psi, const std::vector<Variable>& shared_x,
                     const Variable& t, const Variable& w) {
  if (t.sort != w.sort) throw StructuralError("glue variables " + t.name + " and " + w.name + " have different sorts");
  if (t.sort < 0 || t.sort >= sig.sort_count()) {
    throw StructuralError("glue variable " + t.name + " has no sort in the signature");
  }
  if (t.name == w.name) throw StructuralError("glue variables must be distinct");
  std::set<Variable> fphi = free_vars(phi), fpsi = free_vars(psi);

  std::map<std::string, int> sorts;
  auto note = [&](const Variable& v) {
    auto [it, inserted] = sorts.emplace(v.name, v.sort);
    if (!inserted && it->second != v.sort) throw StructuralError("sort clash on variable " + v.name);
  };
  for (const Variable& v : fphi) note(v);
  for (const Variable& v : fpsi) note(v);
  for (const Variable& v : shared_x) note(v);
  if (sorts.count(t.name) || sorts.count(w.name)) {
    throw StructuralError("glue variables must not occur free in the glued formulas");
  }
  for (const Variable& v : shared_x) {
    if (!fphi.count(v) || !fpsi.count(v)) throw StructuralError("shared variable " + v.name + " is not free in both formulas");
  }
  for (const Variable& v : fphi) {
    bool shared = std::find(shared_x.begin(), shared_x.end(), v) != shared_x.end();
    if (!shared && fpsi.count(v)) throw StructuralError("variable " + v.name + " is free in both formulas but not shared");
  }

  Formula dist = make_metric(sig, make_var(t.name, t.sort), make_var(w.name, w.sort));
  return f_plus(f_min(phi, dist), f_min(psi, f_neg(dist)));
}

}  // namespace contlogic
