// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/modal_spectrum.hpp"
#include "core/stationary.hpp"
#include "core/stokes_ball.hpp"

using namespace ts;

namespace {

UnitStationaryState reference_state() {
  StationaryOptions opts;
  ModelParams params;
  params.gamma = 1.0;
  return compute_unit_stationary(RateFunction::linear(1.0, 0.0),
                                 RateFunction::linear(1.0, 0.5), params, opts);
}

}  // namespace

TEST_CASE("modal stokes boundary response equals the closed-form multipliers") {
  // One suite cross-validates the Stokes cell problems, the F_l solver
  // and the affine eigenvalue formulas against each other.
  UnitStationaryState st = reference_state();
  for (double gamma : {0.4, 1.7, 6.3}) {
    CHECK(std::abs(bgamma_via_stokes(0, gamma, st) - alpha0(st)) <=
          1e-6 * std::abs(alpha0(st)));
    CHECK(std::abs(bgamma_via_stokes(1, gamma, st)) < 1e-9);
    for (int l = 2; l <= 12; ++l) {
      const double direct = bgamma_via_stokes(l, gamma, st);
      const double formula = alpha_l(l, gamma, st);
      CHECK(std::abs(direct - formula) <= 1e-6 * std::max(1e-12, std::abs(formula)));
    }
  }
}

TEST_CASE("fitted slope in gamma matches -l(l+2)(2l+1)/(4(2l^2+4l+3))") {
  UnitStationaryState st = reference_state();
  for (int l : {2, 3, 5, 8}) {
    // least-squares line through five gamma samples
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = 5;
    for (int k = 0; k < m; ++k) {
      const double x = 0.5 + k;
      const double y = bgamma_via_stokes(l, x, st);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(std::abs(slope + K_l(l)) <= 1e-6 * K_l(l));
  }
}

TEST_CASE("zero data gives zero flow; solutions are linear in the data") {
  auto grid = std::make_shared<ChebGrid>(96, 1e-6, 1.0);
  ModalStokesSolver solver(grid, 3);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(grid->size());
  ModalStokesSolution s0 = solver.solve(zero, {0.0, 0.0});
  CHECK(s0.u_r.cwiseAbs().maxCoeff() < 1e-14);

  ModalStokesSolution a = solver.solve(zero, {1.0, 0.3});
  ModalStokesSolution b = solver.solve(zero, {2.0, 0.6});
  CHECK(b.u_r_1 == doctest::Approx(2.0 * a.u_r_1).epsilon(1e-12));
}

TEST_CASE("l = 1 rejects traction data incompatible with rigid motions") {
  auto grid = std::make_shared<ChebGrid>(96, 1e-6, 1.0);
  ModalStokesSolver solver(grid, 1);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(grid->size());
  CHECK_THROWS_AS(solver.solve(zero, {1.0, 1.0}), DomainError);
  // b_n + 2 b_t = 0 is solvable
  CHECK_NOTHROW(solver.solve(zero, {2.0, -1.0}));
}
