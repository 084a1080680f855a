#include "contlogic/stab/topometric.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "contlogic/errors.hpp"
#include "contlogic/unitval/connective.hpp"

namespace contlogic {

using nlohmann::json;

bool FiniteTopometricSpace::is_closed(PointSet s) const {
  return std::binary_search(closed_sets.begin(), closed_sets.end(), s);
}

std::vector<std::string> FiniteTopometricSpace::names(PointSet s) const {
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i) {
    if (s >> i & 1) out.push_back(points[i]);
  }
  return out;
}

UnitValue diameter(const FiniteTopometricSpace& X, PointSet s) {
  UnitValue best = UnitValue::zero();
  for (int i = 0; i < X.size(); ++i) {
    if (!(s >> i & 1)) continue;
    for (int j = i + 1; j < X.size(); ++j) {
      if (s >> j & 1) best = std::max(best, X.metric[i][j]);
    }
  }
  return best;
}

PointSet neighbourhood(const FiniteTopometricSpace& X, PointSet F, const UnitValue& eps) {
  PointSet out = 0;
  for (int x = 0; x < X.size(); ++x) {
    for (int y = 0; y < X.size(); ++y) {
      if ((F >> y & 1) && X.metric[x][y] <= eps) {
        out |= PointSet{1} << x;
        break;
      }
    }
  }
  return out;
}

void validate(const FiniteTopometricSpace& X) {
  const int n = X.size();
  if (n > FiniteTopometricSpace::kMaxPoints) {
    throw StructuralError("topometric spaces are limited to " + std::to_string(FiniteTopometricSpace::kMaxPoints) +
                          " points");
  }
  if (std::set<std::string>(X.points.begin(), X.points.end()).size() != X.points.size()) {
    throw StructuralError("repeated point name");
  }
  if (static_cast<int>(X.metric.size()) != n) throw StructuralError("metric must have one row per point");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(X.metric[i].size()) != n) throw StructuralError("metric must be square");
    if (X.metric[i][i] != UnitValue::zero()) throw StructuralError("metric diagonal must be 0 at " + X.points[i]);
    for (int j = 0; j < n; ++j) {
      if (X.metric[i][j] != X.metric[j][i]) throw StructuralError("metric is not symmetric");
      if (i != j && X.metric[i][j] == UnitValue::zero()) {
        throw StructuralError("distinct points " + X.points[i] + ", " + X.points[j] + " at distance 0");
      }
      for (int k = 0; k < n; ++k) {
        if (X.metric[i][k].value() > X.metric[i][j].value() + X.metric[j][k].value()) {
          throw StructuralError("triangle inequality fails at " + X.points[i] + ", " + X.points[j] + ", " + X.points[k]);
        }
      }
    }
  }
  if (!std::is_sorted(X.closed_sets.begin(), X.closed_sets.end()) ||
      std::adjacent_find(X.closed_sets.begin(), X.closed_sets.end()) != X.closed_sets.end()) {
    throw StructuralError("closed sets must be sorted without repeats");
  }
  for (PointSet c : X.closed_sets) {
    if (c & ~X.full()) throw StructuralError("closed set mentions a point outside the space");
  }
  if (!X.is_closed(0)) throw StructuralError("the empty set must be closed");
  if (!X.is_closed(X.full())) throw StructuralError("the whole space must be closed");
  for (PointSet a : X.closed_sets) {
    for (PointSet b : X.closed_sets) {
      if (!X.is_closed(a | b)) throw StructuralError("closed sets are not closed under union");
      if (!X.is_closed(a & b)) throw StructuralError("closed sets are not closed under intersection");
    }
  }
  for (const UnitValue& eps : X.test_epsilons) {
    for (PointSet c : X.closed_sets) {
      if (!X.is_closed(neighbourhood(X, c, eps))) {
        auto nm = X.names(c);
        std::string text;
        for (const auto& s : nm) text += (text.empty() ? "" : ",") + s;
        throw StructuralError("the " + eps.to_string() + "-neighbourhood of {" + text + "} is not closed");
      }
    }
  }
}

FiniteTopometricSpace discrete_space(std::vector<std::string> points, std::vector<std::vector<UnitValue>> metric) {
  FiniteTopometricSpace X;
  X.points = std::move(points);
  X.metric = std::move(metric);
  if (X.size() > FiniteTopometricSpace::kMaxPoints) throw StructuralError("too many points");
  for (PointSet s = 0; s <= X.full(); ++s) X.closed_sets.push_back(s);
  return X;
}

PointSet cb_derivative(const FiniteTopometricSpace& X, PointSet subset, const UnitValue& eps) {
  PointSet out = subset;
  for (PointSet c : X.closed_sets) {
    PointSet F = c & subset;
    if (diameter(X, subset & ~F) <= eps) out &= F;
  }
  return out;
}

int epsilon_degree(const FiniteTopometricSpace& X, PointSet s, const UnitValue& eps) {
  std::vector<int> idx;
  for (int i = 0; i < X.size(); ++i) {
    if (s >> i & 1) idx.push_back(i);
  }
  const int k = static_cast<int>(idx.size());
  const std::uint32_t all = k == 0 ? 0 : (std::uint32_t{1} << k) - 1;
  // near[i]: local indices within eps of local point i.
  std::vector<std::uint32_t> near(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (X.metric[idx[i]][idx[j]] <= eps) near[i] |= std::uint32_t{1} << j;
    }
  }
  std::vector<char> small(all + 1, 0);
  small[0] = 1;
  for (std::uint32_t m = 1; m <= all; ++m) {
    int low = std::countr_zero(m);
    std::uint32_t rest = m & (m - 1);
    small[m] = small[rest] && (rest & ~near[low]) == 0;
  }
  std::vector<int> cover(all + 1, 0);
  for (std::uint32_t m = 1; m <= all; ++m) {
    std::uint32_t low = m & (~m + 1);
    std::uint32_t rest = m ^ low;
    int best = k + 1;
    // Blocks containing the lowest point: low | sub for sub a submask of rest.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      if (small[low | sub]) best = std::min(best, 1 + cover[rest & ~sub]);
      if (sub == 0) break;
    }
    cover[m] = best;
  }
  return cover[all];
}

CBResult cb_rank(const FiniteTopometricSpace& X, const UnitValue& eps) {
  CBResult r;
  r.epsilon = eps;
  r.ranks.assign(X.size(), 0);
  PointSet stage = X.full();
  r.stages.push_back(stage);
  r.degrees.push_back(epsilon_degree(X, stage, eps));
  while (stage != 0) {
    PointSet next = cb_derivative(X, stage, eps);
    if (next == stage) {
      r.stationary = true;
      break;
    }
    stage = next;
    r.stages.push_back(stage);
    r.degrees.push_back(epsilon_degree(X, stage, eps));
  }
  for (int p = 0; p < X.size(); ++p) {
    if (r.stationary && (stage >> p & 1)) {
      r.ranks[p] = CBResult::kInfinite;
      continue;
    }
    int rank = 0;
    for (std::size_t a = 0; a < r.stages.size(); ++a) {
      if (r.stages[a] >> p & 1) rank = static_cast<int>(a);
    }
    r.ranks[p] = rank;
  }
  return r;
}

namespace {

UnitValue value_of(const json& v, const std::string& where) {
  if (!v.is_string()) throw StructuralError(where + ": values must be rational strings");
  Rational q = Rational::parse(v.get<std::string>());
  if (q < Rational(0) || q > Rational(1)) throw DomainError(where + ": value " + q.to_string() + " outside [0,1]");
  return UnitValue(q);
}

}  // namespace

FiniteTopometricSpace topometric_from_json(const json& j) {
  if (!j.is_object()) throw StructuralError("topometric space must be a JSON object");
  for (const char* key : {"points", "closed_sets", "metric"}) {
    if (!j.contains(key) || !j[key].is_array()) throw StructuralError(std::string("missing array \"") + key + "\"");
  }
  FiniteTopometricSpace X;
  std::map<std::string, int> index;
  for (const json& p : j["points"]) {
    if (!p.is_string()) throw StructuralError("point names must be strings");
    if (!index.emplace(p.get<std::string>(), static_cast<int>(X.points.size())).second) {
      throw StructuralError("repeated point name " + p.get<std::string>());
    }
    X.points.push_back(p.get<std::string>());
  }
  if (X.size() > FiniteTopometricSpace::kMaxPoints) throw StructuralError("too many points");
  for (const json& c : j["closed_sets"]) {
    if (!c.is_array()) throw StructuralError("each closed set must be a list of point names");
    PointSet s = 0;
    for (const json& p : c) {
      if (!p.is_string() || !index.count(p.get<std::string>())) {
        throw StructuralError("closed set mentions unknown point " + p.dump());
      }
      s |= PointSet{1} << index[p.get<std::string>()];
    }
    X.closed_sets.push_back(s);
  }
  std::sort(X.closed_sets.begin(), X.closed_sets.end());
  X.closed_sets.erase(std::unique(X.closed_sets.begin(), X.closed_sets.end()), X.closed_sets.end());
  for (const json& row : j["metric"]) {
    if (!row.is_array()) throw StructuralError("metric rows must be arrays");
    std::vector<UnitValue> r;
    for (const json& v : row) r.push_back(value_of(v, "metric"));
    X.metric.push_back(std::move(r));
  }
  if (j.contains("test_epsilons")) {
    if (!j["test_epsilons"].is_array()) throw StructuralError("\"test_epsilons\" must be an array");
    for (const json& v : j["test_epsilons"]) X.test_epsilons.push_back(value_of(v, "test_epsilons"));
  }
  validate(X);
  return X;
}

json topometric_to_json(const FiniteTopometricSpace& X) {
  json j;
  j["points"] = X.points;
  j["closed_sets"] = json::array();
  for (PointSet c : X.closed_sets) j["closed_sets"].push_back(X.names(c));
  j["metric"] = json::array();
  for (const auto& row : X.metric) {
    json r = json::array();
    for (const UnitValue& v : row) r.push_back(v.to_string());
    j["metric"].push_back(r);
  }
  j["test_epsilons"] = json::array();
  for (const UnitValue& e : X.test_epsilons) j["test_epsilons"].push_back(e.to_string());
  return j;
}

json cb_result_to_json(const FiniteTopometricSpace& X, const CBResult& r) {
  json j;
  j["epsilon"] = r.epsilon.to_string();
  j["stationary"] = r.stationary;
  j["stages"] = json::array();
  for (std::size_t a = 0; a < r.stages.size(); ++a) {
    j["stages"].push_back({{"index", a}, {"points", X.names(r.stages[a])}, {"degree", r.degrees[a]}});
  }
  json ranks = json::object();
  for (int p = 0; p < X.size(); ++p) {
    if (r.ranks[p] == CBResult::kInfinite) {
      ranks[X.points[p]] = "inf";
    } else {
      ranks[X.points[p]] = r.ranks[p];
    }
  }
  j["ranks"] = ranks;
  return j;
}

}  // namespace contlogic
