#include "doctest.h"

#include <stdexcept>

#include "psmanip/generators.hpp"
#include "psmanip/rational.hpp"

using namespace psmanip;

TEST_SUITE_BEGIN("rational");

TEST_CASE("make_rational reduces to canonical form") {
  CHECK(make_rational(2, 4) == Rational(1, 2));
  CHECK(make_rational(2, 4).num() == 1);
  CHECK(make_rational(2, 4).den() == 2);
  CHECK(make_rational(-1, -3) == Rational(1, 3));
  CHECK(make_rational(-1, -3).den() == 3);
  CHECK(make_rational(0, 7) == Rational(0));
  CHECK(make_rational(0, 7).den() == 1);
  CHECK(make_rational(1, -2).num() == -1);
  CHECK(make_rational(1, -2).den() == 2);
}

TEST_CASE("zero denominator is rejected") {
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
}

TEST_CASE("string round trip") {
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-3, 4).str() == "-3/4");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational::from_string("9/10") == Rational(9, 10));
  CHECK(Rational::from_string("-6/4") == Rational(-3, 2));
  CHECK(Rational::from_string("7") == Rational(7));
  CHECK_THROWS_AS(Rational::from_string("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("a/b"), std::invalid_argument);
}

TEST_CASE("arithmetic is exact and order-consistent") {
  Rng rng(Seed(20240811));
  for (int trial = 0; trial < 200; ++trial) {
    const Rational a(rng.int_in(-50, 50), rng.int_in(1, 30));
    const Rational b(rng.int_in(-50, 50), rng.int_in(1, 30));
    CHECK((a + b) - b == a);
    CHECK(a + b == b + a);
    if (!b.is_zero()) {
      CHECK((a / b) * b == a);
    }
    // total order consistency
    CHECK(((a < b) + (a == b) + (b < a)) == 1);
  }
}

TEST_CASE("division by zero rational throws") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("decimal rendering") {
  CHECK(decimal_string(Rational(0)) == "0");
  CHECK(decimal_string(Rational(1)) == "1");
  CHECK(decimal_string(Rational(1, 2)) == "0.5");
  CHECK(decimal_string(Rational(-1, 8)) == "-0.125");
  CHECK(decimal_string(Rational(1, 3), 5) == "0.33333");
  CHECK(decimal_string(Rational(2, 3), 5) == "0.66667");
  CHECK(decimal_string(Rational(16, 15), 6) == "1.06667");
  CHECK(decimal_string(Rational(999999, 1000000), 3) == "1");
  CHECK(decimal_string(Rational(10501, 10000), 4) == "1.05");
}

TEST_SUITE_END();
