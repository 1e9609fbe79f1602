#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ppadtree/error.hpp"
#include "ppadtree/rational.hpp"

using ppad::Rational;

TEST_CASE("canonical form") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational(1, 0), ppad::ValidationError);
}

TEST_CASE("parse") {
  CHECK(Rational::parse("3/9") == Rational(1, 3));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("-3.25") == Rational(-13, 4));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK(Rational::parse(" 12 ") == Rational(12));
  CHECK(Rational::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630/1");
  for (const char* bad : {"", "x", "1/0", "1//2", "1.2.3", "--1", "1/-2", "."})
    CHECK_THROWS_AS(Rational::parse(bad), ppad::ValidationError);
}

TEST_CASE("arithmetic is exact") {
  Rational tenth(1, 10);
  Rational s(0);
  for (int i = 0; i < 10; ++i) s += tenth;
  CHECK(s == Rational(1));
  CHECK(Rational(1, 3) * Rational(3) == Rational(1));
  CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), ppad::ValidationError);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(ppad::abs(Rational(-2, 5)) == Rational(2, 5));
  CHECK(ppad::min(Rational(1), Rational(1, 2)) == Rational(1, 2));
  CHECK(ppad::max(Rational(1), Rational(1, 2)) == Rational(1));
}

TEST_CASE("powers and rounding") {
  CHECK(Rational::pow2(10) == Rational(1024));
  CHECK(Rational::pow2(-3) == Rational(1, 8));
  CHECK(ppad::power_of_ten(3) == Rational(1000));
  CHECK(Rational(7, 2).floor_int() == 3);
  CHECK(Rational(-7, 2).floor_int() == -4);
  CHECK(Rational(-7, 2).ceil_int() == -3);
  CHECK(Rational(4, 2).is_integer());
  CHECK(Rational(1, 3).to_double() == doctest::Approx(0.3333333));
}

TEST_CASE("bounded gate helpers") {
  mpq_class out, one(1), tenth(1, 10);
  ppad::bounded_add(out, mpq_class(3, 4), mpq_class(1, 2), one);
  CHECK(out == 1);
  ppad::bounded_add(out, mpq_class(1, 20), mpq_class(1, 40), tenth);
  CHECK(out == mpq_class(3, 40));
  ppad::bounded_sub(out, mpq_class(0), mpq_class(1));
  CHECK(out == 0);
  ppad::bounded_mul(out, mpq_class(1, 4), mpq_class(16), one);
  CHECK(out == 1);
  ppad::bounded_mul(out, mpq_class(1, 3), mpq_class(1), one);
  CHECK(out == mpq_class(1, 3));
  // aliasing the output with an argument
  mpq_class x(1, 2);
  ppad::bounded_mul(x, x, mpq_class(1, 2), one);
  CHECK(x == mpq_class(1, 4));
}
