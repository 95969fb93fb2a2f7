#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compro {

/// Exact rational arithmetic on 64-bit numerator/denominator.
///
/// All threshold comparisons in this project are exact; floating point is
/// never used. Intermediate products run through __int128 and any result
/// that does not fit back into int64 throws overflow_error. At the scales
/// this toolkit works with (distances bounded by a few multiples of the
/// rotation exponent) overflow is unreachable.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  static Rational parse(std::string_view s);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  /// Renders "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational abs(const Rational& a) { return a.num_ < 0 ? -a : a; }
  friend Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
  friend Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

 private:
  using i128 = __int128;

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from128(n, d);
  }

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from128(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) d = 1;
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("rational out of 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace compro
