#include "contlogic/imag/imaginary.hpp"

#include <algorithm>
#include <set>

#include "contlogic/errors.hpp"
#include "contlogic/lang/modulus_inference.hpp"
#include "contlogic/lang/parser.hpp"
#include "contlogic/model/complete.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/model/validate.hpp"
#include "contlogic/util/tuples.hpp"

namespace contlogic {

namespace {

std::vector<int> sizes_of(const FiniteStructure& M, const std::vector<Variable>& vars) {
  std::vector<int> out;
  for (const Variable& v : vars) out.push_back(M.carrier_size(v.sort));
  return out;
}

std::string tuple_name(const FiniteStructure& M, const std::vector<Variable>& vars, const std::vector<int>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + M.element_name(vars[i].sort, t[i]);
  return s + "]";
}

std::string fresh(const std::set<std::string>& used, const std::string& base) {
  if (!used.count(base)) return base;
  for (int k = 1;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    if (!used.count(c)) return c;
  }
}

}  // namespace

ImaginaryExpansion build_imaginary(const FiniteStructure& M, const Formula& phi, const std::vector<Variable>& xs,
                                   const std::vector<Variable>& ys, const ImaginaryNames& names) {
  std::set<Variable> declared(xs.begin(), xs.end());
  declared.insert(ys.begin(), ys.end());
  if (declared.size() != xs.size() + ys.size()) throw StructuralError("split lists a variable twice");
  if (declared != free_vars(phi)) throw StructuralError("split must list exactly the free variables of the formula");
  ValidationReport report = validate(M, 1);
  if (!report.valid) {
    const Violation& v = report.violations.front();
    throw DomainError("structure does not validate: " + v.kind + " violation for " + v.symbol);
  }

  const Signature& sig = M.signature();
  std::vector<Variable> params = xs;
  params.insert(params.end(), ys.begin(), ys.end());
  Evaluator ev(M, phi, params);
  std::vector<int> xsizes = sizes_of(M, xs), ysizes = sizes_of(M, ys);
  std::vector<std::vector<int>> xtuples, ytuples;
  for_each_tuple(xsizes, [&](const std::vector<int>& t) { xtuples.push_back(t); return true; });
  for_each_tuple(ysizes, [&](const std::vector<int>& t) { ytuples.push_back(t); return true; });

  // rows[b][a] = phi(a, b)
  std::vector<std::vector<UnitValue>> rows(ytuples.size(), std::vector<UnitValue>(xtuples.size()));
  std::vector<int> args(params.size());
  for (std::size_t b = 0; b < ytuples.size(); ++b) {
    std::copy(ytuples[b].begin(), ytuples[b].end(), args.begin() + xs.size());
    for (std::size_t a = 0; a < xtuples.size(); ++a) {
      std::copy(xtuples[a].begin(), xtuples[a].end(), args.begin());
      rows[b][a] = ev(args);
    }
  }

  Signature ext;
  for (int s = 0; s < sig.sort_count(); ++s) ext.add_sort(sig.sort_name(s), sig.metric_name(s));
  for (const FunctionSymbol& f : sig.functions()) ext.add_function(f.name, f.arg_sorts, f.target_sort, f.moduli);
  for (const PredicateSymbol& p : sig.predicates()) ext.add_predicate(p.name, p.arg_sorts, p.moduli);
  int new_sort = ext.add_sort(names.sort, names.metric);
  std::vector<int> pred_sorts;
  std::vector<PLMonotone> pred_moduli;
  for (const Variable& x : xs) {
    pred_sorts.push_back(x.sort);
    pred_moduli.push_back(infer_modulus(phi, sig, x));
  }
  pred_sorts.push_back(new_sort);
  pred_moduli.push_back(PLMonotone::identity());
  int new_pred = ext.add_predicate(names.predicate, pred_sorts, pred_moduli);

  std::vector<std::vector<std::string>> carriers;
  for (int s = 0; s < sig.sort_count(); ++s) carriers.push_back(M.carrier(s));
  std::vector<std::string> tuple_names;
  for (const auto& t : ytuples) tuple_names.push_back(tuple_name(M, ys, t));
  carriers.push_back(tuple_names);

  FiniteStructure pre(ext, carriers);
  for (int s = 0; s < sig.sort_count(); ++s) {
    for (int a = 0; a < M.carrier_size(s); ++a) {
      for (int b = a + 1; b < M.carrier_size(s); ++b) pre.set_dist(s, a, b, M.dist(s, a, b));
    }
  }
  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    const auto& sorts = sig.function(f).arg_sorts;
    for (std::size_t i = 0; i < M.tuple_count(sorts); ++i) pre.set_function(f, M.tuple_at(sorts, i), M.apply_at(f, i));
  }
  for (int p = 0; p < static_cast<int>(sig.predicates().size()); ++p) {
    const auto& sorts = sig.predicate(p).arg_sorts;
    for (std::size_t i = 0; i < M.tuple_count(sorts); ++i) pre.set_pred(p, M.tuple_at(sorts, i), M.pred_at(p, i));
  }
  for (std::size_t b = 0; b < ytuples.size(); ++b) {
    for (std::size_t c = b + 1; c < ytuples.size(); ++c) {
      UnitValue worst = UnitValue::zero();
      for (std::size_t a = 0; a < xtuples.size() && worst != UnitValue::one(); ++a) {
        worst = std::max(worst, absdiff(rows[b][a], rows[c][a]));
      }
      pre.set_dist(new_sort, static_cast<int>(b), static_cast<int>(c), worst);
    }
    std::vector<int> pargs(xs.size() + 1);
    pargs.back() = static_cast<int>(b);
    for (std::size_t a = 0; a < xtuples.size(); ++a) {
      std::copy(xtuples[a].begin(), xtuples[a].end(), pargs.begin());
      pre.set_pred(new_pred, pargs, rows[b][a]);
    }
  }

  Completion done = complete(pre);
  ImaginaryExpansion E;
  E.base = M;
  E.phi = phi;
  E.xs = xs;
  E.ys = ys;
  E.projection = done.class_of[new_sort];
  E.representatives.assign(done.structure.carrier_size(new_sort), {});
  for (std::size_t b = 0; b < ytuples.size(); ++b) {
    auto& rep = E.representatives[E.projection[b]];
    if (rep.empty() && !ytuples[b].empty()) rep = ytuples[b];
  }
  E.expanded = std::move(done.structure);
  E.sort = new_sort;
  E.predicate = new_pred;
  return E;
}

bool TphiReport::all_zero() const {
  return classes_represented == UnitValue::zero() && tuples_covered == UnitValue::zero() &&
         metric_is_row_distance == UnitValue::zero();
}

std::vector<Formula> tphi_sentences(const ImaginaryExpansion& E) {
  const Signature& sig = E.expanded.signature();
  std::set<std::string> used = all_var_names(E.phi);
  Variable z{fresh(used, "z"), E.sort};
  used.insert(z.name);
  Variable w{fresh(used, "w"), E.sort};

  auto P = [&](const Variable& cls) {
    std::vector<Term> args;
    for (const Variable& x : E.xs) args.push_back(make_var(x.name, x.sort));
    args.push_back(make_var(cls.name, cls.sort));
    return make_atomic(sig, E.predicate, std::move(args));
  };
  auto sup_all = [](const std::vector<Variable>& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = f_sup(*it, body);
    return body;
  };
  auto inf_all = [](const std::vector<Variable>& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = f_inf(*it, body);
    return body;
  };
  Formula gap = sup_all(E.xs, f_absdiff(P(z), E.phi));
  Formula represented = f_sup(z, inf_all(E.ys, gap));
  Formula covered = sup_all(E.ys, f_inf(z, gap));
  Formula metric = f_sup(z, f_sup(w, f_absdiff(make_metric(sig, make_var(z.name, E.sort), make_var(w.name, E.sort)),
                                               sup_all(E.xs, f_absdiff(P(z), P(w))))));
  return {represented, covered, metric};
}

TphiReport verify_Tphi(const ImaginaryExpansion& E) {
  std::vector<Formula> s = tphi_sentences(E);
  TphiReport r;
  r.classes_represented = eval_formula(E.expanded, {}, s[0]);
  r.tuples_covered = eval_formula(E.expanded, {}, s[1]);
  r.metric_is_row_distance = eval_formula(E.expanded, {}, s[2]);
  return r;
}

nlohmann::json imaginary_sidecar(const ImaginaryExpansion& E) {
  using nlohmann::json;
  const Signature& sig = E.base.signature();
  json j;
  j["sort"] = E.expanded.signature().sort_name(E.sort);
  j["predicate"] = E.expanded.signature().predicate(E.predicate).name;
  j["formula"] = print_formula(E.phi, sig);
  auto var_list = [&](const std::vector<Variable>& vs) {
    json a = json::array();
    for (const Variable& v : vs) a.push_back(v.name + ":" + sig.sort_name(v.sort));
    return a;
  };
  j["x"] = var_list(E.xs);
  j["y"] = var_list(E.ys);
  auto names = [&](const std::vector<int>& t) {
    json a = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) a.push_back(E.base.element_name(E.ys[i].sort, t[i]));
    return a;
  };
  std::vector<int> ysizes = sizes_of(E.base, E.ys);
  std::vector<json> members(E.representatives.size(), json::array());
  std::size_t idx = 0;
  for_each_tuple(ysizes, [&](const std::vector<int>& t) {
    members[E.projection[idx++]].push_back(names(t));
    return true;
  });
  json classes = json::array();
  for (std::size_t c = 0; c < E.representatives.size(); ++c) {
    classes.push_back({{"name", E.expanded.element_name(E.sort, static_cast<int>(c))},
                       {"representative", names(E.representatives[c])},
                       {"members", members[c]}});
  }
  j["classes"] = std::move(classes);
  return j;
}

}  // namespace contlogic
