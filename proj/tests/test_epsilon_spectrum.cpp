// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/epsilon_spectrum.hpp"
#include "core/modal_spectrum.hpp"
#include "core/stationary.hpp"

using namespace ts;

namespace {

UnitStationaryState reference_state(int n = 96) {
  StationaryOptions opts;
  opts.n_radial = n;
  ModelParams params;
  params.gamma = 1.0;
  return compute_unit_stationary(RateFunction::linear(1.0, 0.0),
                                 RateFunction::linear(1.0, 0.5), params, opts);
}

}  // namespace

TEST_CASE("slow branch converges linearly to the quasi-stationary multiplier") {
  UnitStationaryState st = reference_state();
  EpsilonSpectrumSolver solver(st);
  const double gamma = 1.3;
  for (int l : {0, 2, 3}) {
    const double target = alpha_l(l, gamma, st);
    // |lambda(eps) - alpha_l| <= C eps: the ratio is bounded and the
    // log-log fit of the defect against eps is a line of slope ~1
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int m = 0;
    for (double eps : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
      SlowBranch sb = solver.slow_branch(solver.assemble(l, eps, gamma));
      const double defect = std::abs(sb.lambda - target);
      CHECK(defect <= 10.0 * eps);  // C well below 10 for this model
      const double x = std::log(eps), y = std::log(defect);
      sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y; ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double r2 = (m * sxy - sx * sy) * (m * sxy - sx * sy) /
                      ((m * sxx - sx * sx) * (m * syy - sy * sy));
    CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r2 >= 0.999);
  }
}

TEST_CASE("l = 1 slow branch is the rigid-translation zero") {
  UnitStationaryState st = reference_state();
  EpsilonSpectrumSolver solver(st);
  for (double eps : {1e-4, 1e-3, 1e-2})
    CHECK(std::abs(solver.slow_branch(solver.assemble(1, eps, 1.3)).lambda) <= 1e-6);
}

TEST_CASE("slow eigenvector is boundary dominated: ||phi|| / |c| = O(eps)") {
  UnitStationaryState st = reference_state();
  EpsilonSpectrumSolver solver(st);
  double prev = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double ratio = solver.slow_branch(solver.assemble(2, eps, 1.3)).phi_c_ratio;
    CHECK(ratio <= 50.0 * eps);
    if (prev > 0.0) CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("fast branch tracks the scaled dirichlet nutrient spectrum") {
  UnitStationaryState st = reference_state();
  EpsilonSpectrumSolver solver(st);
  for (int l : {0, 2, 5}) {
    EpsilonSpectrumReport rep = solver.spectrum(l, 1e-4, 1.3);
    REQUIRE(!rep.dirichlet.empty());
    // leading fast eigenvalues match eps^{-1} (Delta_l - f'(sigma_s))
    int matched = 0;
    for (size_t k = 0; k < rep.eigenvalues.size() && matched < 5; ++k) {
      const double re = rep.eigenvalues[k].real();
      if (std::abs(re - rep.slow.lambda) < 1.0) continue;  // skip the slow mode
      CHECK(std::abs(re - rep.dirichlet[matched]) <=
            1e-4 * std::abs(rep.dirichlet[matched]));
      ++matched;
    }
    CHECK(matched == 5);
    CHECK(rep.fast_max_re < 0.0);
  }
}

TEST_CASE("stability threshold exists above gamma_star") {
  UnitStationaryState st = reference_state();
  SpectralSummary sum = spectral_summary(st, 16);
  EpsilonSpectrumSolver solver(st);

  ThresholdResult th = solver.threshold(1.2 * sum.gamma_star, sum);
  CHECK(th.found);
  CHECK(th.epsilon0 > 0.0);
  CHECK(th.bound < 0.0);  // alpha_star/2 < 0 above threshold

  // below threshold some mode is genuinely unstable at small eps
  bool unstable = false;
  for (int l = 2; l <= 8 && !unstable; ++l) {
    EpsilonSpectrumReport rep = solver.spectrum(l, 1e-3, 0.8 * sum.gamma_star);
    for (const auto& ev : rep.eigenvalues) unstable = unstable || ev.real() > 0.0;
  }
  CHECK(unstable);
}

TEST_CASE("slow eigenvalue converges under radial refinement") {
  EpsilonSpectrumSolver a(reference_state(96));
  EpsilonSpectrumSolver b(reference_state(192));
  const double la = a.slow_branch(a.assemble(2, 1e-3, 1.3)).lambda;
  const double lb = b.slow_branch(b.assemble(2, 1e-3, 1.3)).lambda;
  CHECK(std::abs(la - lb) <= 1e-6);
}
