#include <doctest.h>

#include "fixtures.hpp"
#include "tug/rational.hpp"

using namespace tug;
using tug::testing::R;

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(R(1, 3) + R(1, 6) == R(1, 2));
  CHECK(R(2, 4) == R(1, 2));
  CHECK(R(1, 2) * R(2, 3) == R(1, 3));
  CHECK(R(1) / R(3) == R(1, 3));
  CHECK(-R(1, 2) == R(-1, 2));
  CHECK(R(7, -14) == R(-1, 2));  // denominator normalized positive
  CHECK(R(3, 4) - R(3, 4) == R(0));
  CHECK(R(1, 3).str() == "1/3");
  CHECK(R(-6, 3).str() == "-2");
}

TEST_CASE("rational ordering") {
  CHECK(R(1, 3) < R(1, 2));
  CHECK(R(-1, 2) < R(0));
  CHECK(R(5, 10) <= R(1, 2));
  CHECK(R(2, 3) > R(1, 2));
  CHECK(R(1, 1000000000) > R(0));
}

TEST_CASE("parse accepts integers and p/q, rejects junk") {
  CHECK(Rational::parse("3/4") == R(3, 4));
  CHECK(Rational::parse("-3/4") == R(-3, 4));
  CHECK(Rational::parse("42") == R(42));
  CHECK(Rational::parse("-42") == R(-42));
  CHECK(Rational::parse("6/4") == R(3, 2));
  CHECK(!Rational::parse("").has_value());
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(!Rational::parse("1.5").has_value());
  CHECK(!Rational::parse("1/ 2").has_value());
  CHECK(!Rational::parse("a").has_value());
  CHECK(!Rational::parse("1/-2").has_value());
}

TEST_CASE("parse round-trips str()") {
  testing::RationalSource src(7);
  for (int i = 0; i < 50; ++i) {
    const Rational v = src.signed_value(1000, 999);
    CHECK(Rational::parse(v.str()) == v);
  }
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(R(1) / R(0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("vector helpers") {
  const RationalVector a = {R(1), R(2)};
  const RationalVector b = {R(1, 2), R(3)};
  CHECK(dot(a, b) == R(13, 2));
  CHECK(sum(a) == R(3));
  CHECK(scale(a, R(2)) == RationalVector{R(2), R(4)});
  CHECK(add(a, b) == RationalVector{R(3, 2), R(5)});
}
