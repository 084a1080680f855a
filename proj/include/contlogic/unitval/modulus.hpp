#pragma once

#include "contlogic/unitval/pl_monotone.hpp"

namespace contlogic {

/// Standard continuity modulus derived from an inverse modulus u:
/// delta(eps) = max { t in [0,1] : u(t) <= eps }.
class DeltaFromInverse {
 public:
  /// Throws DomainError unless u(0) = 0.
  explicit DeltaFromInverse(PLMonotone u);

  /// Throws DomainError for eps = 0.
  UnitValue operator()(const UnitValue& eps) const;
  /// sup over 0 < e < eps of delta(e): the smallest distance that must separate
  /// two points whose images are eps apart.
  UnitValue left_limit(const UnitValue& eps) const;

  const PLMonotone& inverse() const { return u_; }

 private:
  PLMonotone u_;
};

DeltaFromInverse delta_from_inverse(const PLMonotone& u);

/// Generalized inverse u0(r) = inf { eps > 0 : delta(eps) > r }, inf of the empty set = 1.
UnitValue generalized_inverse(const PLMonotone& delta, const UnitValue& r);

/// Inverse modulus respected by every map respecting the continuity modulus
/// `delta`: u(r) = sup over r' of u1(r, r'), with r' ranging over the breakpoints
/// of u0 and the points r and 2r. Throws DomainError unless delta > 0 on (0,1].
PLMonotone inverse_from_delta(const PLMonotone& delta);

/// True when d'(f x, f y) <= u(d(x, y)).
bool respects_inverse(const PLMonotone& u, const UnitValue& d_in, const UnitValue& d_out);
/// True when for every eps > 0, d(x,y) < delta(eps) implies d'(f x, f y) <= eps.
/// `delta` is continuous, so this is d_out = 0 or d_in >= delta(d_out).
bool respects_delta(const PLMonotone& delta, const UnitValue& d_in, const UnitValue& d_out);
bool respects_delta(const DeltaFromInverse& delta, const UnitValue& d_in, const UnitValue& d_out);

}  // namespace contlogic
