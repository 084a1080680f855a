#include "contlogic/stab/definitions.hpp"

#include <algorithm>
#include <map>

#include "contlogic/errors.hpp"
#include "contlogic/unitval/connective.hpp"
#include "contlogic/util/tuples.hpp"

namespace contlogic {

namespace {

bool far(const UnitValue& a, const UnitValue& b, const UnitValue& eps) { return absdiff(a, b) > eps; }

void check_target(const PhiMatrix& m, const PhiTypeVector& target) {
  if (static_cast<int>(target.values.size()) != m.cols()) throw DomainError("target must give one value per parameter");
}

}  // namespace

MedianResult median_definition(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target, int max_len) {
  if (epsilon == UnitValue::zero()) throw DomainError("median definition needs epsilon > 0");
  check_target(m, target);
  NValue n_phi = compute_N(m, epsilon, max_len);
  NValue n_tr = compute_N(m.transpose(), epsilon, max_len);
  return median_definition(m, epsilon, target, n_phi, n_tr);
}

MedianResult median_definition(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target,
                               const NValue& n_phi, const NValue& n_transpose) {
  if (epsilon == UnitValue::zero()) throw DomainError("median definition needs epsilon > 0");
  check_target(m, target);
  MedianResult result;
  const int N = std::max(n_phi.N, n_transpose.N);
  const int steps = 2 * N - 1;
  std::vector<int> c;
  for (int n = 0; n < steps; ++n) {
    // W[a] = {i < n : |target(a) - phi(c_i, a)| > eps}; K(n) is their downward closure.
    std::map<std::vector<int>, int> witness;
    for (int a = 0; a < m.cols(); ++a) {
      std::vector<int> W;
      for (int i = 0; i < n; ++i) {
        if (far(target.values[a], m.at(c[i], a), epsilon)) W.push_back(i);
      }
      if (static_cast<int>(W.size()) >= N) {
        result.failure = MedianFailure{"set-too-large", n, W};
        return result;
      }
      std::size_t subsets = std::size_t{1} << W.size();
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::vector<int> w;
        for (std::size_t k = 0; k < W.size(); ++k) {
          if (mask >> k & 1) w.push_back(W[k]);
        }
        witness.emplace(std::move(w), a);
      }
    }
    // Constraints per witness column: c_n must be far from c_i there for i in any w it witnesses.
    std::map<int, std::vector<int>> constraints;
    for (const auto& [w, a] : witness) {
      auto& list = constraints[a];
      list.insert(list.end(), w.begin(), w.end());
    }
    std::optional<int> chosen;
    for (int x = 0; x < m.rows() && !chosen; ++x) {
      bool ok = true;
      for (const auto& [a, idx] : constraints) {
        for (int i : idx) {
          if (!far(m.at(c[i], a), m.at(x, a), epsilon)) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) chosen = x;
    }
    if (!chosen) {
      result.failure = MedianFailure{"no-candidate", n, {}};
      return result;
    }
    c.push_back(*chosen);
  }

  MedianDefinition def;
  def.epsilon = epsilon;
  def.N = N;
  def.N_phi = n_phi.N;
  def.N_transpose = n_transpose.N;
  def.N_at_bound = n_phi.at_bound || n_transpose.at_bound;
  def.parameters = c;
  def.observed_error = UnitValue::zero();
  std::vector<UnitValue> column(steps);
  for (int b = 0; b < m.cols(); ++b) {
    for (int i = 0; i < steps; ++i) column[i] = m.at(c[i], b);
    UnitValue v = med(column, N);
    def.values.push_back(v);
    def.observed_error = std::max(def.observed_error, absdiff(v, target.values[b]));
  }
  if (def.observed_error > epsilon) {
    result.failure = MedianFailure{"bound-violated", steps, {}};
    return result;
  }
  result.definition = std::move(def);
  return result;
}

MonotoneParameters monotone_parameters(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target) {
  if (epsilon == UnitValue::zero()) throw DomainError("monotone definition needs epsilon > 0");
  check_target(m, target);
  MonotoneParameters out;
  out.epsilon = epsilon;
  const Rational eps = epsilon.value(), three_eps = eps * Rational(3);
  while (true) {
    std::optional<std::pair<int, int>> violation;
    for (int a = 0; a < m.cols() && !violation; ++a) {
      for (int b = 0; b < m.cols() && !violation; ++b) {
        if (target.values[a].value() <= target.values[b].value() + three_eps) continue;
        bool below = true;
        for (int c : out.parameters) {
          if (m.at(c, a).value() > m.at(c, b).value() + eps) {
            below = false;
            break;
          }
        }
        if (below) violation = std::make_pair(a, b);
      }
    }
    if (!violation) break;
    auto [a, b] = *violation;
    Rational lo = target.values[b].value(), hi = target.values[a].value();
    Rational slack = (hi - lo - three_eps) / Rational(3);
    MonotoneRecord rec{a, b, UnitValue(lo + slack), UnitValue(hi - slack)};
    out.records.push_back(rec);
    std::optional<int> chosen;
    for (int x = 0; x < m.rows() && !chosen; ++x) {
      bool ok = true;
      for (const MonotoneRecord& k : out.records) {
        if (!(m.at(x, k.a) > k.s && m.at(x, k.b) < k.r)) {
          ok = false;
          break;
        }
      }
      if (ok) chosen = x;
    }
    if (!chosen) {
      out.failure = "no admissible parameter at step " + std::to_string(out.records.size() - 1) + " for pair (" +
                    m.col_names[a] + ", " + m.col_names[b] + ")";
      return out;
    }
    out.parameters.push_back(*chosen);
  }
  out.ok = true;
  return out;
}

MonotoneDefinition::MonotoneDefinition(const PhiMatrix& m, const UnitValue& epsilon, const PhiTypeVector& target,
                                       std::vector<int> parameters)
    : m_(&m), eps_(epsilon), target_(target), params_(std::move(parameters)) {
  if (epsilon == UnitValue::zero()) throw DomainError("monotone definition needs epsilon > 0");
  check_target(m, target);
  std::vector<std::vector<UnitValue>> us;
  for (int a = 0; a < m.cols(); ++a) {
    std::vector<UnitValue> u = observed(a), shifted;
    for (const UnitValue& x : u) shifted.push_back(plus_trunc(x, eps_));
    us.push_back(u);
    us.push_back(shifted);
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  for (auto& u : us) {
    UnitValue fu = f(u);
    candidates_.emplace_back(std::move(u), fu);
  }
}

std::vector<UnitValue> MonotoneDefinition::observed(int a) const {
  std::vector<UnitValue> v;
  for (int c : params_) v.push_back(m_->at(c, a));
  return v;
}

UnitValue MonotoneDefinition::f(const std::vector<UnitValue>& u) const {
  UnitValue best = UnitValue::zero();
  for (int a = 0; a < m_->cols(); ++a) {
    bool below = true;
    for (std::size_t i = 0; i < params_.size() && below; ++i) below = m_->at(params_[i], a) <= u[i];
    if (below) best = std::max(best, target_.values[a]);
  }
  return best;
}

UnitValue MonotoneDefinition::h(const std::vector<UnitValue>& u, const std::vector<UnitValue>& v) const {
  UnitValue low = eps_;
  for (std::size_t i = 0; i < u.size(); ++i) low = vmin(low, monus(eps_, monus(u[i], v[i])));
  return UnitValue(low.value() / eps_.value());
}

UnitValue MonotoneDefinition::operator()(const std::vector<UnitValue>& v) const {
  if (v.size() != params_.size()) throw StructuralError("monotone definition applied to the wrong number of values");
  Rational best(0);
  for (const auto& [u, fu] : candidates_) best = std::max(best, h(u, v).value() * fu.value());
  return UnitValue(best);
}

UnitValue MonotoneDefinition::grid_value(const std::vector<UnitValue>& v, const UnitValue& pitch) const {
  if (pitch == UnitValue::zero()) throw DomainError("grid pitch must be positive");
  Rational steps_r = Rational(1) / pitch.value();
  if (steps_r.den() != 1) throw DomainError("grid pitch must divide 1");
  int steps = static_cast<int>(steps_r.num());
  std::vector<int> sizes(params_.size(), steps + 1);
  Rational best(0);
  std::vector<UnitValue> u(params_.size());
  for_each_tuple(sizes, [&](const std::vector<int>& t) {
    for (std::size_t i = 0; i < t.size(); ++i) u[i] = UnitValue(pitch.value() * Rational(t[i]));
    best = std::max(best, h(u, v).value() * f(u).value());
    return true;
  });
  return UnitValue(best);
}

UnitValue MonotoneDefinition::observed_error() const {
  UnitValue worst = UnitValue::zero();
  for (int a = 0; a < m_->cols(); ++a) worst = std::max(worst, absdiff((*this)(observed(a)), target_.values[a]));
  return worst;
}

bool MonotoneDefinition::monotone_on_observed() const {
  std::vector<std::pair<std::vector<UnitValue>, UnitValue>> points;
  for (int a = 0; a < m_->cols(); ++a) {
    auto v = observed(a);
    UnitValue g = (*this)(v);
    points.emplace_back(std::move(v), g);
  }
  for (const auto& [v, gv] : points) {
    for (const auto& [w, gw] : points) {
      bool le = true;
      for (std::size_t i = 0; i < v.size() && le; ++i) le = v[i] <= w[i];
      if (le && gv > gw) return false;
    }
  }
  return true;
}

GlobalResult global_definition(const PhiMatrix& m, const PhiTypeVector& target, int K, int max_len) {
  if (K < 1 || K > 16) throw DomainError("global definition depth must be between 1 and 16");
  check_target(m, target);
  GlobalResult result;
  GlobalDefinition def;
  def.K = K;
  for (int n = 0; n < K; ++n) {
    MedianResult stage = median_definition(m, UnitValue(Rational::pow2_neg(n)), target, max_len);
    if (!stage.ok()) {
      result.failure = std::make_pair(n, *stage.failure);
      return result;
    }
    def.stages.push_back(std::move(*stage.definition));
  }
  def.error_bound = UnitValue(Rational::pow2_neg(K - 1));
  def.observed_error = UnitValue::zero();
  std::vector<UnitValue> seq(K);
  for (int b = 0; b < m.cols(); ++b) {
    for (int n = 0; n < K; ++n) seq[n] = def.stages[n].values[b];
    ForcedLimitTrace t = flim_prefix(seq);
    def.values.push_back(t.modified_prefix.back());
    def.observed_error = std::max(def.observed_error, absdiff(t.modified_prefix.back(), target.values[b]));
    def.traces.push_back(std::move(t));
  }
  result.definition = std::move(def);
  return result;
}

}  // namespace contlogic
