// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/model.hpp"
#include "core/stationary.hpp"

using namespace ts;

namespace {

// f = sigma, g = sigma - 1/2: every closed form below is independent of the
// collocation solver.
UnitStationaryState reference_state(int n = 128) {
  StationaryOptions opts;
  opts.n_radial = n;
  ModelParams params;
  params.gamma = 1.0;
  params.epsilon = 0.01;
  return compute_unit_stationary(RateFunction::linear(1.0, 0.0),
                                 RateFunction::linear(1.0, 0.5), params, opts);
}

// root of 3 (R coth R - 1) / R^2 = 1/2 by bisection, no shared code
double closed_form_radius() {
  auto h = [](double R) { return 3.0 * (R / std::tanh(R) - 1.0) / (R * R) - 0.5; };
  double lo = 0.1, hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0) == (h(lo) > 0) ? lo = mid : hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("stationary radius satisfies the closed-form condition") {
  UnitStationaryState st = reference_state();
  const double R = st.R_s;
  CHECK(std::abs(3.0 * (R / std::tanh(R) - 1.0) / (R * R) - 0.5) < 1e-8);
  CHECK(std::abs(R - closed_form_radius()) < 1e-8);
}

TEST_CASE("nutrient profile matches the sinh closed form pointwise") {
  UnitStationaryState st = reference_state();
  const double R = st.R_s;
  for (int i = 0; i < st.grid->size(); ++i) {
    const double r = st.grid->nodes()(i);
    const double exact = std::sinh(R * r) / (r * std::sinh(R));
    CHECK(std::abs(st.sigma(i) - exact) < 1e-8);
  }
  const double sp = R / std::tanh(R) - 1.0;  // d/dr at r = 1 after rescaling
  CHECK(st.sigma_prime_1 == doctest::Approx(sp).epsilon(1e-10));
}

TEST_CASE("pressure identity: p - (4/3) g(sigma) is the surface tension") {
  UnitStationaryState st = reference_state();
  for (int i = 0; i < st.grid->size(); ++i)
    CHECK(std::abs(st.p(i) - (4.0 / 3.0) * st.g.eval(st.sigma(i)) - st.gamma) < 1e-9);
}

TEST_CASE("boundary velocity vanishes and total growth is zero") {
  UnitStationaryState st = reference_state();
  CHECK(std::abs(st.v(st.grid->size() - 1)) < 1e-10);
  CHECK(std::abs(growth_integral(st.g, *st.grid, st.sigma)) < 1e-10);
  CHECK(st.nutrient_residual < 1e-10);
}

TEST_CASE("normal-stress identity at the boundary") {
  // 2 v'' (1) - p'(1) - (2/3) g'(sigma(1)) sigma'(1) = -4 g(1)
  UnitStationaryState st = reference_state();
  const int N = st.grid->size() - 1;
  const double vpp = (st.grid->d2() * st.v)(N);
  const double pp = (st.grid->d1() * st.p)(N);
  const double lhs = 2.0 * vpp - pp - (2.0 / 3.0) * st.g.derivative(st.sigma(N)) *
                                          st.sigma_prime_1;
  CHECK(std::abs(lhs + 4.0 * st.g1()) < 1e-7);
}

TEST_CASE("rescale_to_unit reproduces the full pipeline") {
  UnitStationaryState st = reference_state();
  ModelParams params;
  params.gamma = 1.0;
  StationaryOptions opts;
  UnitStationaryState st2 = rescale_to_unit(RateFunction::linear(1.0, 0.0),
                                            RateFunction::linear(1.0, 0.5), params,
                                            st.R_s, opts);
  CHECK((st.sigma - st2.sigma).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(st2.R_s == doctest::Approx(st.R_s));
}

TEST_CASE("radius search converges under grid refinement") {
  const double r1 = reference_state(128).R_s;
  const double r2 = reference_state(256).R_s;
  CHECK(std::abs(r1 - r2) < 1e-10);
}

TEST_CASE("assumption validation flags a growth law with no admissible root") {
  // g > 0 on [0, 1]: total growth never vanishes
  AssumptionReport rep = validate_assumptions(RateFunction::linear(1.0, 0.0),
                                              RateFunction::linear(1.0, -0.5), 1.0);
  CHECK_FALSE(rep.pass());
  AssumptionReport ok = validate_assumptions(RateFunction::linear(1.0, 0.0),
                                             RateFunction::linear(1.0, 0.5), 1.0);
  CHECK(ok.pass());
  CHECK(ok.sigma_tilde.has_value());
  CHECK(*ok.sigma_tilde == doctest::Approx(0.5).epsilon(1e-10));
}
