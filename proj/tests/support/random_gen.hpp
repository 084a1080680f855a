#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "contlogic/unitval/pl_monotone.hpp"

namespace testsupport {

using contlogic::PLMonotone;
using contlogic::Rational;
using contlogic::UnitValue;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }
  /// k / den for k uniform in [0, den].
  UnitValue grid_value(int den) { return UnitValue(Rational(uniform(0, den), den)); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Random n-point metric with values on the 1/den grid: random symmetric weights
/// in (0,1] closed under shortest paths.
inline std::vector<std::vector<UnitValue>> random_metric(Rng& rng, int n, int den) {
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = Rational(rng.uniform(1, den), den);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  std::vector<std::vector<UnitValue>> out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i].push_back(UnitValue(d[i][j]));
  }
  return out;
}

/// Random non-decreasing PL function on the 1/den grid with `inner` interior breakpoints.
/// When `vanish_at_zero` the output at 0 is 0; when `positive` the value right
/// after 0 is positive.
inline PLMonotone random_pl(Rng& rng, int inner, int den, bool vanish_at_zero, bool positive) {
  std::vector<int> xs = {0, den};
  while (static_cast<int>(xs.size()) < inner + 2) {
    int x = rng.uniform(1, den - 1);
    bool seen = false;
    for (int v : xs) seen |= v == x;
    if (!seen) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<int> ys;
  for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(rng.uniform(0, den));
  std::sort(ys.begin(), ys.end());
  if (vanish_at_zero) ys[0] = 0;
  if (positive) {
    for (std::size_t i = 1; i < ys.size(); ++i) ys[i] = std::max(ys[i], 1);
  }
  std::vector<PLMonotone::Breakpoint> bps;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bps.emplace_back(UnitValue(Rational(xs[i], den)), UnitValue(Rational(ys[i], den)));
  }
  return PLMonotone(std::move(bps));
}

}  // namespace testsupport
