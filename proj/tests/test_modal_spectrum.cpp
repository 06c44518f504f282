// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/modal_spectrum.hpp"
#include "core/stationary.hpp"

using namespace ts;

namespace {

UnitStationaryState reference_state(int n = 128) {
  StationaryOptions opts;
  opts.n_radial = n;
  ModelParams params;
  params.gamma = 1.0;
  return compute_unit_stationary(RateFunction::linear(1.0, 0.0),
                                 RateFunction::linear(1.0, 0.5), params, opts);
}

}  // namespace

TEST_CASE("K_l matches the rational closed form") {
  for (int l : {2, 3, 5, 8, 12}) {
    const double num = double(l) * (l + 2) * (2 * l + 1);
    const double den = 4.0 * (2.0 * l * l + 4 * l + 3);
    CHECK(K_l(l) == doctest::Approx(num / den).epsilon(1e-15));
  }
}

TEST_CASE("F_l solves the linearized nutrient equation") {
  UnitStationaryState st = reference_state();
  for (int l : {0, 1, 2, 5, 9}) {
    ModalSolveResult F = solve_Fl(l, st);
    CHECK(F.residual < 1e-7);
    CHECK(F.u(st.grid->size() - 1) == doctest::Approx(-st.sigma_prime_1).epsilon(1e-12));
  }
}

TEST_CASE("alpha_l is affine in gamma with slope -K_l") {
  UnitStationaryState st = reference_state();
  for (int l : {2, 4, 7}) {
    const double a1 = alpha_l(l, 1.0, st);
    const double a2 = alpha_l(l, 3.0, st);
    CHECK((a2 - a1) / 2.0 == doctest::Approx(-K_l(l)).epsilon(1e-12));
    CHECK(alpha_l(l, gamma_l(l, st), st) == doctest::Approx(0.0).epsilon(1e-10));
  }
  CHECK(alpha_l(1, 0.7, st) == 0.0);
  CHECK(alpha_l(0, 0.7, st) == doctest::Approx(alpha0(st)));
}

TEST_CASE("thresholds are positive, alpha0 negative, tail decays") {
  UnitStationaryState st = reference_state();
  SpectralSummary sum = spectral_summary(st, 64, /*extend_until_tail=*/true);
  CHECK(sum.alpha0 < 0.0);
  CHECK(sum.gamma_star > 0.0);
  for (double gl : sum.gammas) CHECK(gl > 0.0);
  CHECK(sum.tail_ok);
  for (int l = sum.l_max - 7; l <= sum.l_max; ++l)
    CHECK(sum.gamma_of(l) < sum.gamma_of(l - 1));
}

TEST_CASE("l_star and gamma_star stable under doubling l_max") {
  UnitStationaryState st = reference_state();
  SpectralSummary a = spectral_summary(st, 16);
  SpectralSummary b = spectral_summary(st, 32);
  CHECK(a.l_star == b.l_star);
  CHECK(a.gamma_star == doctest::Approx(b.gamma_star).epsilon(1e-12));
}

TEST_CASE("gamma_star converges under radial refinement") {
  SpectralSummary a = spectral_summary(reference_state(128), 16);
  SpectralSummary b = spectral_summary(reference_state(256), 16);
  CHECK(std::abs(a.gamma_star - b.gamma_star) <= 1e-6);
}

TEST_CASE("alpha0 < 0 across randomized admissible models") {
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> slope(0.3, 3.0), root(0.1, 0.9),
      lam(0.2, 4.0);
  StationaryOptions opts;
  opts.n_radial = 96;
  ModelParams params;
  int accepted = 0;
  for (int trial = 0; accepted < 20 && trial < 200; ++trial) {
    RateFunction f = RateFunction::linear(lam(rng), 0.0);
    RateFunction g = RateFunction::linear(slope(rng), root(rng));
    if (!validate_assumptions(f, g, 1.0).pass()) continue;
    UnitStationaryState st = compute_unit_stationary(f, g, params, opts);
    CHECK(alpha0(st) < 0.0);
    ++accepted;
  }
  CHECK(accepted == 20);
}
