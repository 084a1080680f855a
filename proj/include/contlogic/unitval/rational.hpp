#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace contlogic {

/// Exact signed rational with 64-bit numerator and denominator, always kept in
/// lowest terms with a positive denominator. Intermediate products use 128-bit
/// integers; a result that does not fit throws OverflowError.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  bool is_zero() const { return num_ == 0; }
  /// True when the denominator is a power of two.
  bool is_dyadic() const { return (den_ & (den_ - 1)) == 0; }

  /// "p/q", or "p" when q = 1.
  std::string to_string() const;
  /// Accepts "p", "p/q", optionally signed. Decimal notation is rejected.
  static Rational parse(std::string_view text);

  /// 2^-k for 0 <= k <= 62.
  static Rational pow2_neg(int k);

 private:
  static Rational from_wide(__int128 numerator, __int128 denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace contlogic

template <>
struct std::hash<contlogic::Rational> {
  std::size_t operator()(const contlogic::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
