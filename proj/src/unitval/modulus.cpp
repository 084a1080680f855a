#include "contlogic/unitval/modulus.hpp"

#include <algorithm>
#include <stdexcept>

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

// max { t : f(t) <= level } for a PL function with f(0) <= level < f(1).
Rational last_at_most(const PLMonotone& f, const Rational& level) {
  const auto& bps = f.breakpoints();
  for (std::size_t i = 1; i < bps.size(); ++i) {
    const Rational& y1 = bps[i].second;
    if (y1 > level) {
      const Rational& x0 = bps[i - 1].first;
      const Rational& y0 = bps[i - 1].second;
      const Rational& x1 = bps[i].first;
      return x0 + (x1 - x0) * ((level - y0) / (y1 - y0));
    }
  }
  return Rational(1);
}

// min { t : f(t) >= level } for a PL function with f(0) < level <= f(1).
Rational first_at_least(const PLMonotone& f, const Rational& level) {
  const auto& bps = f.breakpoints();
  for (std::size_t i = 1; i < bps.size(); ++i) {
    const Rational& y1 = bps[i].second;
    if (y1 >= level) {
      const Rational& x0 = bps[i - 1].first;
      const Rational& y0 = bps[i - 1].second;
      const Rational& x1 = bps[i].first;
      return x0 + (x1 - x0) * ((level - y0) / (y1 - y0));
    }
  }
  return Rational(1);
}

struct Line {
  Rational slope;
  Rational intercept;
  Rational at(const Rational& x) const { return slope * x + intercept; }
};

}  // namespace

DeltaFromInverse::DeltaFromInverse(PLMonotone u) : u_(std::move(u)) {
  if (!u_.is_inverse_modulus()) throw DomainError("inverse modulus must vanish at 0, got " + u_.to_string());
}

UnitValue DeltaFromInverse::operator()(const UnitValue& eps) const {
  if (eps == UnitValue::zero()) throw DomainError("continuity modulus evaluated at epsilon = 0");
  if (u_(UnitValue::one()) <= eps) return UnitValue::one();
  return UnitValue(last_at_most(u_, eps));
}

UnitValue DeltaFromInverse::left_limit(const UnitValue& eps) const {
  if (eps == UnitValue::zero()) return UnitValue::zero();
  if (u_(UnitValue::one()) < eps) return UnitValue::one();
  return UnitValue(first_at_least(u_, eps));
}

DeltaFromInverse delta_from_inverse(const PLMonotone& u) { return DeltaFromInverse(u); }

UnitValue generalized_inverse(const PLMonotone& delta, const UnitValue& r) {
  const auto& bps = delta.breakpoints();
  if (r < bps.front().second) return UnitValue::zero();
  if (r >= bps.back().second) return UnitValue::one();
  return UnitValue(last_at_most(delta, r));
}

PLMonotone inverse_from_delta(const PLMonotone& delta) {
  const auto& dbps = delta.breakpoints();
  if (dbps[0].second == UnitValue::zero() && dbps[1].second == UnitValue::zero()) {
    throw DomainError("continuity modulus vanishes on (0, " + dbps[1].first.to_string() + "]");
  }

  // Abscissae where u0 may fail to be linear.
  std::vector<Rational> kinks;
  for (const auto& [e, d] : dbps) {
    if (d > UnitValue::zero()) kinks.push_back(d.value());
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  auto u0 = [&](const Rational& r) { return generalized_inverse(delta, UnitValue(r)).value(); };
  std::vector<Rational> kink_values;
  for (const Rational& b : kinks) kink_values.push_back(u0(b));

  const Rational two(2);
  // Candidate r' = b contributes u0(b) * (2r/b - 1) on [b/2, b) and u0(b) from b on.
  auto ramp = [&](std::size_t k, const Rational& r) -> Rational {
    const Rational& b = kinks[k];
    if (r >= b) return kink_values[k];
    if (r * two < b) return Rational(0);
    return kink_values[k] * (two * r / b - Rational(1));
  };
  auto u_at = [&](const Rational& r) {
    Rational best = u0(r);
    for (std::size_t k = 0; k < kinks.size(); ++k) best = std::max(best, ramp(k, r));
    return best;
  };

  std::vector<Rational> grid = {Rational(0), Rational(1)};
  for (const Rational& b : kinks) {
    grid.push_back(b);
    grid.push_back(b / two);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Rational> points = grid;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Rational& p = grid[i - 1];
    const Rational& q = grid[i];
    Rational m1 = p + (q - p) / Rational(3);
    Rational m2 = p + (q - p) * Rational(2, 3);
    std::vector<Line> lines;
    auto add_line = [&](const Rational& v1, const Rational& v2) {
      Rational slope = (v2 - v1) / (m2 - m1);
      lines.push_back({slope, v1 - slope * m1});
    };
    add_line(u0(m1), u0(m2));
    for (std::size_t k = 0; k < kinks.size(); ++k) add_line(ramp(k, m1), ramp(k, m2));
    for (std::size_t a = 0; a < lines.size(); ++a) {
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        if (lines[a].slope == lines[b].slope) continue;
        Rational x = (lines[b].intercept - lines[a].intercept) / (lines[a].slope - lines[b].slope);
        if (p < x && x < q) points.push_back(x);
      }
    }
    // The envelope must join up with the point values at both ends.
    auto envelope = [&](const Rational& x) {
      Rational best = lines.front().at(x);
      for (const Line& l : lines) best = std::max(best, l.at(x));
      return best;
    };
    if (envelope(p) != u_at(p) || envelope(q) != u_at(q)) {
      throw std::logic_error("inverse_from_delta: envelope is discontinuous near " + p.to_string());
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<PLMonotone::Breakpoint> bps;
  for (const Rational& x : points) bps.emplace_back(UnitValue(x), UnitValue(u_at(x)));
  return PLMonotone(std::move(bps));
}

bool respects_inverse(const PLMonotone& u, const UnitValue& d_in, const UnitValue& d_out) { return d_out <= u(d_in); }

bool respects_delta(const PLMonotone& delta, const UnitValue& d_in, const UnitValue& d_out) {
  return d_out == UnitValue::zero() || d_in >= delta(d_out);
}

bool respects_delta(const DeltaFromInverse& delta, const UnitValue& d_in, const UnitValue& d_out) {
  return d_out == UnitValue::zero() || d_in >= delta.left_limit(d_out);
}

}  // namespace contlogic
