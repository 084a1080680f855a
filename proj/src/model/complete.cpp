#include "contlogic/model/complete.hpp"

#include <algorithm>
#include <numeric>

#include "contlogic/errors.hpp"

namespace contlogic {

Completion complete(const FiniteStructure& M) {
  const Signature& sig = M.signature();
  Completion out;
  std::vector<std::vector<int>> reps(sig.sort_count());
  std::vector<std::vector<std::string>> carriers(sig.sort_count());
  out.class_of.resize(sig.sort_count());
  for (int s = 0; s < sig.sort_count(); ++s) {
    int n = M.carrier_size(s);
    out.class_of[s].assign(n, -1);
    for (int a = 0; a < n; ++a) {
      if (out.class_of[s][a] >= 0) continue;
      int cls = static_cast<int>(reps[s].size());
      reps[s].push_back(a);
      carriers[s].push_back(M.element_name(s, a));
      for (int b = a; b < n; ++b) {
        if (M.dist(s, a, b) != UnitValue::zero()) continue;
        if (out.class_of[s][b] >= 0) {
          throw StructuralError("zero distance is not transitive in sort " + sig.sort_name(s) + " at " +
                                M.element_name(s, a) + ", " + M.element_name(s, b));
        }
        out.class_of[s][b] = cls;
      }
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if ((out.class_of[s][a] == out.class_of[s][b]) != (M.dist(s, a, b) == UnitValue::zero())) {
          throw StructuralError("zero distance is not an equivalence in sort " + sig.sort_name(s) + " at " +
                                M.element_name(s, a) + ", " + M.element_name(s, b));
        }
      }
    }
  }

  FiniteStructure Q(sig, carriers);
  for (int s = 0; s < sig.sort_count(); ++s) {
    int n = M.carrier_size(s);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        int ca = out.class_of[s][a], cb = out.class_of[s][b];
        if (M.dist(s, a, b) != M.dist(s, reps[s][ca], reps[s][cb])) {
          throw StructuralError("distance in sort " + sig.sort_name(s) + " is not constant on classes: " +
                                M.element_name(s, a) + ", " + M.element_name(s, b));
        }
        if (a == reps[s][ca] && b == reps[s][cb]) Q.set_dist(s, ca, cb, M.dist(s, a, b));
      }
    }
  }

  auto class_tuple = [&](const std::vector<int>& sorts, const std::vector<int>& args) {
    std::vector<int> c(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) c[i] = out.class_of[sorts[i]][args[i]];
    return c;
  };
  auto describe = [&](const std::string& name, const std::vector<int>& sorts, const std::vector<int>& args) {
    std::string s = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + M.element_name(sorts[i], args[i]);
    return s + ")";
  };

  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    const FunctionSymbol& sym = sig.function(f);
    std::vector<int> first_of(Q.tuple_count(sym.arg_sorts), -1);
    for (std::size_t i = 0; i < M.tuple_count(sym.arg_sorts); ++i) {
      std::vector<int> args = M.tuple_at(sym.arg_sorts, i);
      int value = M.apply_at(f, i);
      if (value < 0) throw StructuralError("function " + sym.name + " is not total");
      std::vector<int> cls = class_tuple(sym.arg_sorts, args);
      std::size_t qi = Q.tuple_index(sym.arg_sorts, cls);
      int cv = out.class_of[sym.target_sort][value];
      if (first_of[qi] < 0) {
        first_of[qi] = static_cast<int>(i);
        Q.set_function(f, cls, cv);
      } else if (Q.apply_at(f, qi) != cv) {
        throw StructuralError("function " + sym.name + " is not well defined on classes: " +
                              describe(sym.name, sym.arg_sorts, M.tuple_at(sym.arg_sorts, first_of[qi])) + " vs " +
                              describe(sym.name, sym.arg_sorts, args));
      }
    }
  }
  for (int p = 0; p < static_cast<int>(sig.predicates().size()); ++p) {
    const PredicateSymbol& sym = sig.predicate(p);
    std::vector<int> first_of(Q.tuple_count(sym.arg_sorts), -1);
    for (std::size_t i = 0; i < M.tuple_count(sym.arg_sorts); ++i) {
      std::vector<int> args = M.tuple_at(sym.arg_sorts, i);
      std::vector<int> cls = class_tuple(sym.arg_sorts, args);
      std::size_t qi = Q.tuple_index(sym.arg_sorts, cls);
      if (first_of[qi] < 0) {
        first_of[qi] = static_cast<int>(i);
        Q.set_pred(p, cls, M.pred_at(p, i));
      } else if (Q.pred_at(p, qi) != M.pred_at(p, i)) {
        throw StructuralError("predicate " + sym.name + " is not well defined on classes: " +
                              describe(sym.name, sym.arg_sorts, M.tuple_at(sym.arg_sorts, first_of[qi])) + " vs " +
                              describe(sym.name, sym.arg_sorts, args));
      }
    }
  }
  out.structure = std::move(Q);
  return out;
}

namespace {

bool same_under(const FiniteStructure& A, const FiniteStructure& B, const std::vector<std::vector<int>>& map) {
  const Signature& sig = A.signature();
  for (int s = 0; s < sig.sort_count(); ++s) {
    int n = A.carrier_size(s);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (A.dist(s, a, b) != B.dist(s, map[s][a], map[s][b])) return false;
      }
    }
  }
  auto mapped = [&](const std::vector<int>& sorts, std::vector<int> args) {
    for (std::size_t i = 0; i < args.size(); ++i) args[i] = map[sorts[i]][args[i]];
    return args;
  };
  for (int f = 0; f < static_cast<int>(sig.functions().size()); ++f) {
    const auto& sorts = sig.function(f).arg_sorts;
    for (std::size_t i = 0; i < A.tuple_count(sorts); ++i) {
      if (map[sig.function(f).target_sort][A.apply_at(f, i)] != B.apply(f, mapped(sorts, A.tuple_at(sorts, i)))) return false;
    }
  }
  for (int p = 0; p < static_cast<int>(sig.predicates().size()); ++p) {
    const auto& sorts = sig.predicate(p).arg_sorts;
    for (std::size_t i = 0; i < A.tuple_count(sorts); ++i) {
      if (A.pred_at(p, i) != B.pred(p, mapped(sorts, A.tuple_at(sorts, i)))) return false;
    }
  }
  return true;
}

bool search(const FiniteStructure& A, const FiniteStructure& B, std::vector<std::vector<int>>& map, int sort) {
  if (sort == A.signature().sort_count()) return same_under(A, B, map);
  std::vector<int> perm(A.carrier_size(sort));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    map[sort] = perm;
    if (search(A, B, map, sort + 1)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool isomorphic(const FiniteStructure& A, const FiniteStructure& B) {
  if (!(A.signature() == B.signature())) return false;
  for (int s = 0; s < A.signature().sort_count(); ++s) {
    if (A.carrier_size(s) != B.carrier_size(s)) return false;
    if (A.carrier_size(s) > 8) throw DomainError("isomorphism search limited to carriers of at most 8 elements");
  }
  std::vector<std::vector<int>> map(A.signature().sort_count());
  return search(A, B, map, 0);
}

}  // namespace contlogic
