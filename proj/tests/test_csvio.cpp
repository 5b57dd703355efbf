#include <doctest.h>

#include <cmath>
#include <random>

#include "vimod/csvio.hpp"
#include "vimod/errors.hpp"

using namespace vimod;

TEST_SUITE("csvio") {

TEST_CASE("format_double round-trips random doubles exactly") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 500; ++i) {
    double v = u(rng);
    if (i % 7 == 0) {
      v = std::ldexp(v, -40);  // sprinkle tiny magnitudes in
    }
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(parse_double(format_double(0.0)) == 0.0);
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("parse rejects trailing garbage") {
  CHECK_THROWS_AS(parse_double("1.5x"), IoError);
  CHECK_THROWS_AS(parse_double(""), IoError);
  CHECK_THROWS_AS(parse_long("12.5"), IoError);
  CHECK(parse_long("-42") == -42);
}

TEST_CASE("split preserves empty fields") {
  const auto f = split_fields(",a,,b,", ',');
  REQUIRE(f.size() == 5);
  CHECK(f[0] == "");
  CHECK(f[1] == "a");
  CHECK(f[2] == "");
  CHECK(f[3] == "b");
  CHECK(f[4] == "");
  const auto one = split_fields("solo", ',');
  REQUIRE(one.size() == 1);
  CHECK(one[0] == "solo");
}

}  // TEST_SUITE
