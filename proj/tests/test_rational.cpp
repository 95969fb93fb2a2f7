#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/rational.hpp"

using compro::Rational;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(3, -2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(5, -1).str() == "-5");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(abs(Rational(-7, 2)) == Rational(7, 2));
}

TEST_CASE("comparisons cross-multiply without drift") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(1000000, 3) > Rational(333333));
  CHECK(min(Rational(2, 7), Rational(2, 9)) == Rational(2, 9));
  CHECK(max(Rational(-1), Rational(-2)) == Rational(-1));
}

TEST_CASE("parse accepts p/q and plain integers") {
  CHECK(Rational::parse("5/3") == Rational(5, 3));
  CHECK(Rational::parse(" -7 ") == Rational(-7));
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK_THROWS(Rational::parse("a/b"));
}

TEST_CASE("str round-trips") {
  for (auto s : {"0", "17", "-4/9", "5027"}) {
    CHECK(Rational::parse(s).str() == s);
  }
}

TEST_CASE("overflow is detected rather than wrapped") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * Rational(8), std::overflow_error);
}
