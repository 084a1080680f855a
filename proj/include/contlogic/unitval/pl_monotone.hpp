#pragma once

#include <string>
#include <utility>
#include <vector>

#include "contlogic/unitval/unit_value.hpp"

namespace contlogic {

/// Piecewise-linear non-decreasing map [0,1] -> [0,1], given by breakpoints with
/// strictly increasing inputs from 0 to 1 and non-decreasing outputs.
class PLMonotone {
 public:
  using Breakpoint = std::pair<UnitValue, UnitValue>;

  /// Identity.
  PLMonotone();
  /// Validates the breakpoint list (throws StructuralError) and drops collinear
  /// interior breakpoints, so equal functions compare equal.
  explicit PLMonotone(std::vector<Breakpoint> breakpoints);

  static PLMonotone identity() { return PLMonotone(); }
  static PLMonotone constant(const UnitValue& c);
  static PLMonotone zero() { return constant(UnitValue::zero()); }
  /// Parses "x0:y0,x1:y1,...".
  static PLMonotone parse(const std::string& text);

  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  UnitValue operator()(const UnitValue& x) const;
  bool is_inverse_modulus() const { return bps_.front().second == UnitValue::zero(); }

  std::string to_string() const;

  friend bool operator==(const PLMonotone&, const PLMonotone&) = default;

 private:
  std::vector<Breakpoint> bps_;
};

UnitValue eval_pl(const PLMonotone& f, const UnitValue& x);
/// f o g.
PLMonotone pl_compose(const PLMonotone& f, const PLMonotone& g);
/// min(f + g, 1).
PLMonotone pl_capped_sum(const PLMonotone& f, const PLMonotone& g);
/// f / 2.
PLMonotone pl_half(const PLMonotone& f);
/// Pointwise max.
PLMonotone pl_max(const PLMonotone& f, const PLMonotone& g);

/// Linear interpolation between (x0,y0) and (x1,y1), evaluated at x.
Rational interpolate(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1, const Rational& x);

}  // namespace contlogic
