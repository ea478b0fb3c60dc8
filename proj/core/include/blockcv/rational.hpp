#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "blockcv/errors.hpp"

namespace blockcv {

// Exact rational over 64-bit integers, always kept in lowest terms with a
// positive denominator, so operator== is plain field comparison. Arithmetic
// runs through 128-bit intermediates; a result that does not fit back into
// 64 bits throws (the design identities here are desk scale, so this never
// fires in practice).
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value) {}  // implicit on purpose
  Rational(long long num, long long den) { *this = make(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  // "12/5" for proper fractions, "3" for integers.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(wide(a.num_) * b.den_ - wide(b.num_) * a.den_,
                wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw BadParameters("rational division by zero");
    return make(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }
  Rational operator-() const { return make(-wide(num_), den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const wide lhs = wide(a.num_) * b.den_;
    const wide rhs = wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  using wide = __int128;

  static wide wide_abs(wide x) { return x < 0 ? -x : x; }

  static wide wide_gcd(wide a, wide b) {
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
      const wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(wide num, wide den) {
    if (den == 0) throw BadParameters("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const wide g = wide_gcd(num, den);
    if (g != 0) {
      num /= g;
      den /= g;
    }
    constexpr wide lo = INT64_MIN;
    constexpr wide hi = INT64_MAX;
    if (num < lo || num > hi || den > hi) {
      throw BadParameters("rational overflow: value exceeds 64-bit range");
    }
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace blockcv
