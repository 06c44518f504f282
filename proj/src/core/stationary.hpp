// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>

#include "core/chebyshev.hpp"
#include "core/model.hpp"
#include "core/rate_function.hpp"

namespace ts {

struct StationaryOptions {
  int n_radial = 128;       // collocation degree
  double r0 = 1e-6;         // inner grid cutoff
  double newton_tol = 1e-12;
  double r_min = 1e-3;      // radius scan bracket
  double r_max = 50.0;
  int scan_points = 200;
  double growth_tol = 1e-10;  // |total growth| at the stationary radius
};

/// Radial stationary state of the free-boundary problem, rescaled to the
/// unit ball: the grid lives on [r0, 1] and the stored rate laws are the
/// originals multiplied by R_s^2 so the unit-ball equations hold verbatim.
struct UnitStationaryState {
  std::shared_ptr<const ChebGrid> grid;
  double R_s = 0.0;         // stationary radius of the unscaled problem
  RateFunction f, g;        // rescaled consumption / growth laws
  double gamma = 0.0;
  double epsilon = 0.0;
  Eigen::VectorXd sigma, v, p;
  double sigma_prime_1 = 0.0;
  double nutrient_residual = 0.0;
  double growth_residual = 0.0;

  double g1() const { return g.eval(1.0); }  // growth rate at the boundary
};

/// sigma'' + (2/r) sigma' = F(sigma), sigma(R)=1, regular at 0, solved on
/// the given grid over [r0, R]. Rate evaluation is linearly extended outside
/// the law's domain so Newton iterates stay well-defined.
Eigen::VectorXd solve_nutrient_profile(const RateFunction& f, const ChebGrid& grid,
                                       double* sigma_prime_R = nullptr,
                                       double* residual = nullptr,
                                       const Eigen::VectorXd* guess = nullptr,
                                       double tol = 1e-12);

/// Total growth G = \int_0^R g(sigma) r^2 dr  (Clenshaw–Curtis on the grid).
double growth_integral(const RateFunction& g, const ChebGrid& grid,
                       const Eigen::VectorXd& sigma);

/// v(r) = r^{-2} \int_0^r g(sigma(s)) s^2 ds via a spectral antiderivative.
Eigen::VectorXd velocity_profile(const RateFunction& g, const ChebGrid& grid,
                                 const Eigen::VectorXd& sigma);

/// Unit-ball stationary pressure p = (4/3) g(sigma) + gamma.
Eigen::VectorXd pressure_profile(const RateFunction& g, const Eigen::VectorXd& sigma,
                                 double gamma);

/// Root of R |-> growth_integral over a geometric scan of [r_min, r_max];
/// throws SolverError if no sign change is bracketed.
double find_stationary_radius(const RateFunction& f, const RateFunction& g,
                              const StationaryOptions& opts = {});

/// Full pipeline: find R_s, rescale the laws by R_s^2 and re-solve on the
/// unit ball, assembling velocity and pressure profiles.
UnitStationaryState compute_unit_stationary(const RateFunction& f, const RateFunction& g,
                                            const ModelParams& params,
                                            const StationaryOptions& opts = {});

/// Same, but skip the radius search: rescale with a known R_s (used by the
/// disk cache to reconstruct a state deterministically).
UnitStationaryState rescale_to_unit(const RateFunction& f, const RateFunction& g,
                                    const ModelParams& params, double R_s,
                                    const StationaryOptions& opts = {});

}  // namespace ts
