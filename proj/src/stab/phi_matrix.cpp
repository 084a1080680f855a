#include "contlogic/stab/phi_matrix.hpp"

#include <set>

#include "contlogic/errors.hpp"
#include "contlogic/model/eval.hpp"
#include "contlogic/util/tuples.hpp"

namespace contlogic {

namespace {

std::vector<std::vector<int>> all_tuples(const FiniteStructure& M, const std::vector<Variable>& vars) {
  std::vector<int> sizes;
  for (const Variable& v : vars) sizes.push_back(M.carrier_size(v.sort));
  std::vector<std::vector<int>> out;
  for_each_tuple(sizes, [&](const std::vector<int>& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::string tuple_name(const FiniteStructure& M, const std::vector<Variable>& vars, const std::vector<int>& t) {
  if (t.size() == 1) return M.element_name(vars[0].sort, t[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + M.element_name(vars[i].sort, t[i]);
  return s + ")";
}

}  // namespace

PhiMatrix PhiMatrix::transpose() const {
  PhiMatrix t;
  t.row_names = col_names;
  t.col_names = row_names;
  t.values.assign(cols(), std::vector<UnitValue>(rows()));
  for (int a = 0; a < rows(); ++a) {
    for (int b = 0; b < cols(); ++b) t.values[b][a] = values[a][b];
  }
  return t;
}

PhiMatrix phi_matrix(const FiniteStructure& M, const Formula& phi, const std::vector<Variable>& xs,
                     const std::vector<Variable>& ys) {
  std::set<Variable> declared(xs.begin(), xs.end());
  declared.insert(ys.begin(), ys.end());
  if (declared.size() != xs.size() + ys.size()) throw StructuralError("split lists a variable twice");
  for (const Variable& v : free_vars(phi)) {
    if (!declared.count(v)) throw StructuralError("free variable " + v.name + " is not in the split");
  }
  std::vector<Variable> params = xs;
  params.insert(params.end(), ys.begin(), ys.end());
  Evaluator ev(M, phi, params);
  auto xt = all_tuples(M, xs), yt = all_tuples(M, ys);
  PhiMatrix m;
  for (const auto& t : xt) m.row_names.push_back(tuple_name(M, xs, t));
  for (const auto& t : yt) m.col_names.push_back(tuple_name(M, ys, t));
  m.values.assign(xt.size(), std::vector<UnitValue>(yt.size()));
  std::vector<int> args(params.size());
  for (std::size_t a = 0; a < xt.size(); ++a) {
    std::copy(xt[a].begin(), xt[a].end(), args.begin());
    for (std::size_t b = 0; b < yt.size(); ++b) {
      std::copy(yt[b].begin(), yt[b].end(), args.begin() + xs.size());
      m.values[a][b] = ev(args);
    }
  }
  return m;
}

PhiTypeVector phi_type(const PhiMatrix& m, int a) { return {m.values.at(a), a}; }

UnitValue type_distance(const PhiTypeVector& p, const PhiTypeVector& q) {
  if (p.values.size() != q.values.size()) throw StructuralError("type vectors of different length");
  UnitValue worst = UnitValue::zero();
  for (std::size_t b = 0; b < p.values.size(); ++b) worst = std::max(worst, absdiff(p.values[b], q.values[b]));
  return worst;
}

PhiTypeSpace phi_type_space(const PhiMatrix& m) {
  PhiTypeSpace s;
  for (int a = 0; a < m.rows(); ++a) {
    bool found = false;
    for (std::size_t p = 0; p < s.points.size() && !found; ++p) {
      if (s.points[p].values == m.values[a]) {
        s.realizers[p].push_back(a);
        found = true;
      }
    }
    if (!found) {
      s.points.push_back(phi_type(m, a));
      s.realizers.push_back({a});
    }
  }
  std::size_t n = s.points.size();
  s.metric.assign(n, std::vector<UnitValue>(n, UnitValue::zero()));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) s.metric[p][q] = s.metric[q][p] = type_distance(s.points[p], s.points[q]);
  }
  return s;
}

}  // namespace contlogic
