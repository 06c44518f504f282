// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/rate_function.hpp"

using ts::RateFunction;

TEST_CASE("linear law evaluates and differentiates") {
  RateFunction g = RateFunction::linear(2.0, 0.5);
  CHECK(g.eval(0.5) == doctest::Approx(0.0));
  CHECK(g.eval(1.0) == doctest::Approx(1.0));
  CHECK(g.derivative(0.3) == doctest::Approx(2.0));
}

TEST_CASE("polynomial law matches horner evaluation") {
  // 0.1 s - 0.4 s^2 + 2 s^3 (no constant term: rate laws vanish at 0)
  RateFunction f = RateFunction::polynomial({0.1, -0.4, 2.0});
  for (double s : {0.0, 0.2, 0.7, 1.0}) {
    CHECK(f.eval(s) ==
          doctest::Approx(0.1 * s - 0.4 * s * s + 2.0 * s * s * s).epsilon(1e-14));
    CHECK(f.derivative(s) ==
          doctest::Approx(0.1 - 0.8 * s + 6.0 * s * s).epsilon(1e-14));
  }
}

TEST_CASE("spline law reproduces its samples and interpolates smoothly") {
  std::vector<double> x, y;
  for (int i = 0; i <= 20; ++i) {
    x.push_back(i / 20.0);
    y.push_back(std::sin(x.back()));
  }
  RateFunction f = RateFunction::spline(x, y);
  for (size_t i = 0; i < x.size(); ++i)
    CHECK(f.eval(x[i]) == doctest::Approx(y[i]).epsilon(1e-13));
  CHECK(f.eval(0.515) == doctest::Approx(std::sin(0.515)).epsilon(1e-6));
  CHECK(f.derivative(0.5) == doctest::Approx(std::cos(0.5)).epsilon(1e-4));
}

TEST_CASE("scaled() multiplies the rate, not the argument") {
  RateFunction f = RateFunction::linear(1.0, 0.0);
  RateFunction fs = f.scaled(4.0);
  CHECK(fs.eval(0.5) == doctest::Approx(2.0));
  CHECK(fs.derivative(0.5) == doctest::Approx(4.0));
}

TEST_CASE("make() parses family strings and rejects malformed coefficient lists") {
  RateFunction f = RateFunction::make("linear", {1.0, 0.5});
  CHECK(f.eval(0.5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(RateFunction::make("linear", {}), ts::ConfigError);
  CHECK_THROWS_AS(RateFunction::make("tabulated-spline", {0.0, 1.0}), ts::ConfigError);
  CHECK_THROWS_AS(RateFunction::make("quartic", {1.0}), ts::ConfigError);
}
