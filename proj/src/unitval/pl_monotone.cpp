#include "contlogic/unitval/pl_monotone.hpp"

#include <algorithm>
#include <sstream>

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

std::vector<Rational> sorted_unique(std::vector<Rational> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

template <class F>
PLMonotone sample(const std::vector<Rational>& xs, F&& value) {
  std::vector<PLMonotone::Breakpoint> bps;
  bps.reserve(xs.size());
  for (const Rational& x : xs) bps.emplace_back(UnitValue(x), value(UnitValue(x)));
  return PLMonotone(std::move(bps));
}

std::vector<Rational> abscissae(const PLMonotone& f) {
  std::vector<Rational> xs;
  for (const auto& [x, y] : f.breakpoints()) xs.push_back(x);
  return xs;
}

}  // namespace

Rational interpolate(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1, const Rational& x) {
  if (x == x0) return y0;
  if (x == x1) return y1;
  return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
}

PLMonotone::PLMonotone() : bps_{{UnitValue::zero(), UnitValue::zero()}, {UnitValue::one(), UnitValue::one()}} {}

PLMonotone::PLMonotone(std::vector<Breakpoint> breakpoints) {
  if (breakpoints.size() < 2) throw StructuralError("PL function needs at least two breakpoints");
  if (breakpoints.front().first != UnitValue::zero() || breakpoints.back().first != UnitValue::one()) {
    throw StructuralError("PL breakpoints must start at input 0 and end at input 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1].first < breakpoints[i].first)) {
      throw StructuralError("PL breakpoint inputs must be strictly increasing");
    }
    if (breakpoints[i].second < breakpoints[i - 1].second) {
      throw StructuralError("PL breakpoint outputs must be non-decreasing");
    }
  }
  bps_.push_back(breakpoints.front());
  for (std::size_t i = 1; i + 1 < breakpoints.size(); ++i) {
    const auto& [x0, y0] = bps_.back();
    const auto& [x1, y1] = breakpoints[i];
    const auto& [x2, y2] = breakpoints[i + 1];
    // keep only genuine kinks
    if ((y1.value() - y0.value()) * (x2.value() - x1.value()) != (y2.value() - y1.value()) * (x1.value() - x0.value())) {
      bps_.push_back(breakpoints[i]);
    }
  }
  bps_.push_back(breakpoints.back());
}

PLMonotone PLMonotone::constant(const UnitValue& c) { return PLMonotone({{UnitValue::zero(), c}, {UnitValue::one(), c}}); }

PLMonotone PLMonotone::parse(const std::string& text) {
  std::vector<Breakpoint> bps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw StructuralError("PL breakpoint '" + item + "' is not of the form x:y");
    bps.emplace_back(UnitValue::parse(item.substr(0, colon)), UnitValue::parse(item.substr(colon + 1)));
  }
  return PLMonotone(std::move(bps));
}

UnitValue PLMonotone::operator()(const UnitValue& x) const {
  auto it = std::lower_bound(bps_.begin(), bps_.end(), x, [](const Breakpoint& b, const UnitValue& v) { return b.first < v; });
  if (it->first == x) return it->second;
  auto prev = it - 1;
  return UnitValue(interpolate(prev->first, prev->second, it->first, it->second, x));
}

std::string PLMonotone::to_string() const {
  std::string out;
  for (const auto& [x, y] : bps_) {
    if (!out.empty()) out += ",";
    out += x.to_string() + ":" + y.to_string();
  }
  return out;
}

UnitValue eval_pl(const PLMonotone& f, const UnitValue& x) { return f(x); }

PLMonotone pl_compose(const PLMonotone& f, const PLMonotone& g) {
  std::vector<Rational> xs = abscissae(g);
  const auto& gb = g.breakpoints();
  for (const auto& [fx, fy] : f.breakpoints()) {
    for (std::size_t i = 1; i < gb.size(); ++i) {
      const Rational& y0 = gb[i - 1].second;
      const Rational& y1 = gb[i].second;
      if (y0 < fx.value() && fx.value() < y1) {
        const Rational& x0 = gb[i - 1].first;
        const Rational& x1 = gb[i].first;
        xs.push_back(x0 + (x1 - x0) * ((fx.value() - y0) / (y1 - y0)));
      }
    }
  }
  return sample(sorted_unique(std::move(xs)), [&](const UnitValue& x) { return f(g(x)); });
}

PLMonotone pl_capped_sum(const PLMonotone& f, const PLMonotone& g) {
  std::vector<Rational> xs = abscissae(f);
  for (const Rational& x : abscissae(g)) xs.push_back(x);
  xs = sorted_unique(std::move(xs));
  std::vector<Rational> all = xs;
  auto raw = [&](const Rational& x) { return f(UnitValue(x)).value() + g(UnitValue(x)).value(); };
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Rational s0 = raw(xs[i - 1]);
    Rational s1 = raw(xs[i]);
    if (s0 < Rational(1) && Rational(1) < s1) {
      all.push_back(xs[i - 1] + (xs[i] - xs[i - 1]) * ((Rational(1) - s0) / (s1 - s0)));
    }
  }
  return sample(sorted_unique(std::move(all)), [&](const UnitValue& x) { return UnitValue::clamp(raw(x)); });
}

PLMonotone pl_half(const PLMonotone& f) {
  std::vector<PLMonotone::Breakpoint> bps;
  for (const auto& [x, y] : f.breakpoints()) bps.emplace_back(x, UnitValue(y.value() / Rational(2)));
  return PLMonotone(std::move(bps));
}

PLMonotone pl_max(const PLMonotone& f, const PLMonotone& g) {
  std::vector<Rational> xs = abscissae(f);
  for (const Rational& x : abscissae(g)) xs.push_back(x);
  xs = sorted_unique(std::move(xs));
  std::vector<Rational> all = xs;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Rational d0 = f(UnitValue(xs[i - 1])).value() - g(UnitValue(xs[i - 1])).value();
    Rational d1 = f(UnitValue(xs[i])).value() - g(UnitValue(xs[i])).value();
    if ((d0 < Rational(0) && Rational(0) < d1) || (d1 < Rational(0) && Rational(0) < d0)) {
      all.push_back(xs[i - 1] + (xs[i] - xs[i - 1]) * (d0 / (d0 - d1)));
    }
  }
  return sample(sorted_unique(std::move(all)), [&](const UnitValue& x) { return std::max(f(x), g(x)); });
}

}  // namespace contlogic
