#include <doctest.h>

#include "cubedim/errors.hpp"
#include "cubedim/rational.hpp"

using namespace cubedim;

TEST_CASE("rational literals parse digit-exactly") {
  CHECK(parse_rational("3/4").value == Rational(3, 4));
  CHECK(parse_rational("12").value == Rational(12));
  CHECK(parse_rational("-2/6").value == Rational(-1, 3));
  CHECK(parse_rational("0.05").value == Rational(1, 20));
  CHECK_FALSE(parse_rational("0.05").inexact);
  CHECK(parse_rational("0.333333333").value == Rational(333333333, 1000000000));

  const ParsedRational truncated = parse_rational("0.3333333333333");
  CHECK(truncated.inexact);
  CHECK(truncated.value == Rational(333333333, 1000000000));

  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("rational_string round-trips") {
  CHECK(rational_string(Rational(1, 3)) == "1/3");
  CHECK(rational_string(Rational(7)) == "7");
  CHECK(parse_rational(rational_string(Rational(22, 7))).value == Rational(22, 7));
}

TEST_CASE("pow_rational handles negative exponents") {
  CHECK(pow_rational(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow_rational(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(pow_rational(Rational(5), 0) == Rational(1));
}

TEST_CASE("log helpers stay accurate for huge values") {
  const BigInt big = boost::multiprecision::pow(BigInt(3), 500);
  CHECK(log_big(big) == doctest::Approx(500.0 * std::log(3.0)).epsilon(1e-13));
  const Rational tiny = Rational(1) / Rational(big);
  CHECK(log_rational(tiny) == doctest::Approx(-500.0 * std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("compare_log_mean decides mean-log order exactly") {
  // log(9)/2 == log(3)/1
  CHECK(compare_log_mean(Rational(9), 2, Rational(3), 1) == 0);
  // log(8)/3 < log(3)/1
  CHECK(compare_log_mean(Rational(8), 3, Rational(3), 1) < 0);
  // works below 1: log(1/9)/2 == log(1/3)/1
  CHECK(compare_log_mean(Rational(1, 9), 2, Rational(1, 3), 1) == 0);
  CHECK(compare_log_mean(Rational(1, 8), 3, Rational(1, 3), 1) > 0);
}
