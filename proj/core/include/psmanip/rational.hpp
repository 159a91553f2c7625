#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace psmanip {

/// Exact rational number backed by GMP, always held in canonical form:
/// lowest terms, positive denominator. Every fractional quantity in the
/// toolkit (allocations, eating times, utilities, ratios) is one of these;
/// there is no floating point anywhere in the simulation or the checks.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value);

  /// Parses "p", "-p", or "p/q" in base 10.
  static Rational from_string(std::string_view text);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  /// Canonical text form: "p" when the denominator is 1, else "p/q".
  std::string str() const;

  double to_double() const { return v_.get_d(); }

  Rational& operator+=(const Rational& rhs) { v_ += rhs.v_; return *this; }
  Rational& operator-=(const Rational& rhs) { v_ -= rhs.v_; return *this; }
  Rational& operator*=(const Rational& rhs) { v_ *= rhs.v_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& value) { return Rational(mpq_class(-value.v_)); }

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.v_ == rhs.v_; }
  friend bool operator!=(const Rational& lhs, const Rational& rhs) { return lhs.v_ != rhs.v_; }
  friend bool operator<(const Rational& lhs, const Rational& rhs) { return lhs.v_ < rhs.v_; }
  friend bool operator<=(const Rational& lhs, const Rational& rhs) { return lhs.v_ <= rhs.v_; }
  friend bool operator>(const Rational& lhs, const Rational& rhs) { return lhs.v_ > rhs.v_; }
  friend bool operator>=(const Rational& lhs, const Rational& rhs) { return lhs.v_ >= rhs.v_; }

  friend std::ostream& operator<<(std::ostream& out, const Rational& value);

 private:
  mpq_class v_;
};

/// Builds num/den in canonical reduced form. Rejects den == 0.
Rational make_rational(long num, long den);

/// Renders an exact rational as a decimal string with at most
/// `significant_digits` significant digits (round half away from zero);
/// terminating expansions shorter than that are emitted exactly, with no
/// trailing zeros.
std::string decimal_string(const Rational& value, int significant_digits = 12);

}  // namespace psmanip
