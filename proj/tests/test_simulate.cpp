// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/simulate.hpp"

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

TEST_CASE("exponential fit recovers an exact rate") {
  std::vector<double> t, y;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.05 * i);
    y.push_back(3.0 * std::exp(-1.7 * t.back()));
  }
  RateFit fit = fit_exponential_rate(t, y);
  CHECK(fit.rate == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  y[40] = -1.0;
  CHECK_THROWS_AS(fit_exponential_rate(t, y, 0.0), DomainError);
}

TEST_CASE("linear modal evolution reproduces the slow eigenvalue") {
  UnitStationaryState st = reference_state();
  EpsilonSpectrumSolver solver(st);
  ModalBlockOperator op = solver.assemble(2, 1e-2, 1.3);
  SlowBranch slow = solver.slow_branch(op);

  LinearModalTrajectory tr =
      evolve_linear_mode(op, 1e-3 * slow.phi, 1e-3, 4.0, 1e-3);
  CHECK(std::abs(tr.fitted_rate - slow.lambda) <= 0.01 * std::abs(slow.lambda));
  CHECK(tr.fit_r2 > 0.9999);
}

TEST_CASE("explicit stepper refuses a stiffness-violating dt") {
  UnitStationaryState st = reference_state();
  EpsilonSpectrumSolver solver(st);
  ModalBlockOperator op = solver.assemble(2, 1e-3, 1.3);
  SlowBranch slow = solver.slow_branch(op);
  CHECK_THROWS_AS(
      evolve_linear_mode(op, 1e-3 * slow.phi, 1e-3, 0.1, 1e-2, Stepper::ExplicitRK4),
      ConfigError);
}

TEST_CASE("radial relaxation rate matches the l = 0 slow eigenvalue") {
  // the simulation runs on the unit-rescaled laws so time matches the
  // spectral normalization (stationary radius 1)
  UnitStationaryState st = reference_state();
  for (double eps : {0.0, 0.01}) {
    double lam;
    if (eps == 0.0) {
      lam = alpha0(st);
    } else {
      EpsilonSpectrumSolver solver(st);
      lam = solver.slow_branch(solver.assemble(0, eps, st.gamma)).lambda;
    }
    RadialTrajectory tr = simulate_radial_nonlinear(st.f, st.g, eps, 1.05,
                                                    Eigen::VectorXd(), 1.5, 1e-3);
    std::vector<double> defect;
    for (double R : tr.R) defect.push_back(std::abs(R - 1.0));
    RateFit fit = fit_exponential_rate(tr.times, defect);
    CHECK(std::abs(fit.rate - lam) <= 0.05 * std::abs(lam));
  }
}

TEST_CASE("stationary data stays stationary") {
  UnitStationaryState st = reference_state();
  RadialTrajectory tr =
      simulate_radial_nonlinear(RateFunction::linear(1.0, 0.0),
                                RateFunction::linear(1.0, 0.5), 0.01, st.R_s,
                                Eigen::VectorXd(), 10.0, 1e-2);
  for (double R : tr.R) CHECK(std::abs(R - st.R_s) <= 1e-8 * st.R_s);
}

TEST_CASE("volume balance defect shrinks at stepper order") {
  UnitStationaryState st = reference_state();
  // spin up first: the quasi-static start carries an O(eps) fast transient
  // whose under-resolved steps would otherwise dominate the defect
  RadialTrajectory warm = simulate_radial_nonlinear(st.f, st.g, 0.01, 1.05,
                                                    Eigen::VectorXd(), 0.2, 5e-4);
  auto defect = [&](double dt) {
    return simulate_radial_nonlinear(st.f, st.g, 0.01, warm.R.back(),
                                     warm.sigma_final, 0.5, dt)
        .volume_balance_max;
  };
  const double coarse = defect(2e-3), fine = defect(1e-3);
  CHECK(coarse / fine > 3.5);  // second-order stepper
  CHECK(fine < 1e-7);
}

TEST_CASE("fitted rate converges under dt halving and grid doubling") {
  UnitStationaryState st = reference_state();

  auto rate = [&](double dt, int n) {
    RadialSimOptions o;
    o.n_radial = n;
    RadialTrajectory tr =
        simulate_radial_nonlinear(st.f, st.g, 0.01, 1.05, Eigen::VectorXd(), 1.5, dt, o);
    std::vector<double> defect;
    for (double R : tr.R) defect.push_back(std::abs(R - 1.0));
    return fit_exponential_rate(tr.times, defect).rate;
  };
  const double r1 = rate(2e-3, 64), r2 = rate(1e-3, 64), r3 = rate(1e-3, 128);
  CHECK(std::abs(r2 - r1) <= 1e-3 * std::abs(r1));
  CHECK(std::abs(r3 - r2) <= 1e-3 * std::abs(r2));
}
