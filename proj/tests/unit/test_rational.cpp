#include "doctest.h"

#include <stdexcept>

#include "crnb/rational.hpp"

using crnb::parse_rational;
using crnb::Rational;

TEST_SUITE("rational") {
  TEST_CASE("integer, fraction, decimal and scientific literals parse exactly") {
    CHECK(parse_rational("6") == 6);
    CHECK(parse_rational("-3") == -3);
    CHECK(parse_rational("+4") == 4);
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("2.") == 2);
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("2.5E2") == 250);
    CHECK(parse_rational("1.25e+1") == Rational(25, 2));
    CHECK(parse_rational("0.000") == 0);
  }

  TEST_CASE("no floating point intermediate") {
    CHECK(crnb::format_rational(parse_rational("0.1")) == "1/10");
    CHECK(crnb::format_rational(parse_rational("0.30000000000000004")) ==
          "7500000000000001/25000000000000000");
    CHECK(parse_rational("123456789012345678901234567890") ==
          Rational("123456789012345678901234567890"));
  }

  TEST_CASE("malformed literals are rejected") {
    for (const char* bad : {"", "-", "abc", "1/0", "1/", "/2", "1.2.3", "1e", "e5", "1e5.5", "0x10",
                            "1 2", "--1", "1/-2", "inf", "nan"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
    }
  }

  TEST_CASE("to_double and formatting") {
    CHECK(crnb::to_double(Rational(1, 4)) == doctest::Approx(0.25));
    CHECK(crnb::format_rational(Rational(6)) == "6");
    CHECK(crnb::format_rational(Rational(-5, 2)) == "-5/2");
  }
}
