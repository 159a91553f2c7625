#include "psmanip/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace psmanip {

namespace {

mpz_class parse_integer(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("Rational: empty integer field");
  }
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') {
    ++pos;
  }
  if (pos == text.size()) {
    throw std::invalid_argument("Rational: sign without digits");
  }
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("Rational: invalid character in '" + std::string(text) + "'");
    }
  }
  return mpz_class(std::string(text), 10);
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (sgn(den) == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) {
  if (sgn(v_.get_den()) == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  v_.canonicalize();
}

Rational Rational::from_string(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text), mpz_class(1));
  }
  const mpz_class num = parse_integer(text.substr(0, slash));
  const mpz_class den = parse_integer(text.substr(slash + 1));
  return Rational(num, den);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) {
    return v_.get_num().get_str();
  }
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw std::domain_error("Rational: division by zero");
  }
  v_ /= rhs.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& out, const Rational& value) {
  return out << value.str();
}

Rational make_rational(long num, long den) {
  if (den == 0) {
    throw std::invalid_argument("make_rational: zero denominator");
  }
  return Rational(num, den);
}

std::string decimal_string(const Rational& value, int significant_digits) {
  if (significant_digits < 1) {
    throw std::invalid_argument("decimal_string: need at least one significant digit");
  }
  if (value.is_zero()) {
    return "0";
  }

  const bool negative = value.sign() < 0;
  mpz_class p = abs(value.num());
  const mpz_class q = value.den();

  mpz_class integer_part = p / q;
  mpz_class rem = p % q;

  std::string int_str = integer_part.get_str();
  int significant_seen = (integer_part == 0) ? 0 : static_cast<int>(int_str.size());

  std::string frac;
  bool exact = (rem == 0);
  while (!exact && significant_seen < significant_digits) {
    rem *= 10;
    mpz_class digit = rem / q;
    rem %= q;
    frac += static_cast<char>('0' + digit.get_ui());
    if (significant_seen > 0 || digit != 0) {
      ++significant_seen;
    }
    exact = (rem == 0);
  }

  if (!exact) {
    // Round half away from zero on the next digit.
    rem *= 10;
    const mpz_class next_digit = rem / q;
    if (next_digit >= 5) {
      int i = static_cast<int>(frac.size()) - 1;
      for (; i >= 0; --i) {
        if (frac[i] != '9') {
          ++frac[i];
          break;
        }
        frac[i] = '0';
      }
      if (i < 0) {
        integer_part += 1;
        int_str = integer_part.get_str();
      }
    }
  }

  while (!frac.empty() && frac.back() == '0') {
    frac.pop_back();
  }

  std::string out = negative ? "-" : "";
  out += int_str;
  if (!frac.empty()) {
    out += "." + frac;
  }
  return out;
}

}  // namespace psmanip
