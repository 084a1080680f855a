#include "contlogic/unitval/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

using i128 = __int128;

i128 gcd_wide(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (text.empty()) throw DomainError("invalid rational '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) throw OverflowError("rational component out of range: " + std::string(whole));
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("invalid rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(i128 numerator, i128 denominator) {
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  i128 g = gcd_wide(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (numerator == 0) denominator = 1;
  if (!fits(numerator) || !fits(denominator)) throw OverflowError("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(numerator);
  r.den_ = static_cast<std::int64_t>(denominator);
  return r;
}

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(static_cast<i128>(num_) + rhs.num_, den_);
  } else {
    *this = from_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                      static_cast<i128>(den_) * rhs.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(static_cast<i128>(num_) - rhs.num_, den_);
  } else {
    *this = from_wide(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                      static_cast<i128>(den_) * rhs.den_);
  }
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw DomainError("division by zero");
  *this = from_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
  i128 a = static_cast<i128>(lhs.num_) * rhs.den_;
  i128 b = static_cast<i128>(rhs.num_) * lhs.den_;
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) body.remove_prefix(1);
  while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) body.remove_suffix(1);
  if (body.find('.') != std::string_view::npos || body.find('e') != std::string_view::npos ||
      body.find('E') != std::string_view::npos) {
    throw DomainError("decimal notation is not accepted for exact values: '" + std::string(text) + "'");
  }
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  auto slash = body.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(body, text));
  std::string_view den_text = body.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw DomainError("invalid rational '" + std::string(text) + "'");
  }
  return Rational(parse_int(body.substr(0, slash), text), parse_int(den_text, text));
}

Rational Rational::pow2_neg(int k) {
  if (k < 0 || k > 62) throw DomainError("2^-k requested for k out of range");
  return Rational(1, std::int64_t{1} << k);
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace contlogic
