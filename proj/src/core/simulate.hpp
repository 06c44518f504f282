// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/epsilon_spectrum.hpp"
#include "core/stationary.hpp"

namespace ts {

/// Least-squares slope of log y vs t over the tail window (first
/// window_skip fraction of samples excluded). y must be positive there.
struct RateFit {
  double rate = 0.0;
  double r2 = 0.0;
};
RateFit fit_exponential_rate(const std::vector<double>& t, const std::vector<double>& y,
                             double window_skip = 0.2);

struct LinearModalTrajectory {
  std::vector<double> times;
  std::vector<double> c_values;
  std::vector<double> phi_norms;
  double fitted_rate = 0.0;
  double fit_r2 = 0.0;
};

enum class Stepper { ImplicitTRBDF2, ExplicitRK4 };

/// Evolves the per-mode linear system dx/dt = M x from (phi0, c0). The
/// implicit stepper is L-stable; the explicit one requires
/// dt * |fast eigenvalue| within the RK4 stability interval and throws a
/// ConfigError otherwise.
LinearModalTrajectory evolve_linear_mode(const ModalBlockOperator& op,
                                         const Eigen::VectorXd& phi0, double c0, double T,
                                         double dt, Stepper stepper = Stepper::ImplicitTRBDF2);

struct RadialTrajectory {
  std::vector<double> times;
  std::vector<double> R;
  std::vector<double> sigma_center;
  Eigen::VectorXd sigma_final;
  bool blew_up = false;
  double volume_balance_max = 0.0;  // max per-step defect of d/dt(R^3/3) = \int g r^2 dr
};

struct RadialSimOptions {
  int n_radial = 64;
  double r0 = 1e-6;
  double R_min = 1e-3, R_max = 1e3;
  int record_stride = 1;
};

/// Radially symmetric nonlinear free-boundary evolution on the mapped
/// domain s = r/R(t):
///   eps (dsigma/dt - s (Rdot/R) dsigma/ds) = R^{-2} Delta_s sigma - f(sigma),
///   Rdot = R \int_0^1 g(sigma) s^2 ds,   sigma(1) = 1.
/// eps = 0 runs the quasi-static elliptic solve per step with RK4 on R;
/// eps > 0 uses TR-BDF2 with an analytic Jacobian (nutrient block is stiff).
/// sigma0 empty => start from the quasi-static profile at R0.
RadialTrajectory simulate_radial_nonlinear(const RateFunction& f, const RateFunction& g,
                                           double epsilon, double R0,
                                           const Eigen::VectorXd& sigma0, double T, double dt,
                                           const RadialSimOptions& opts = {});

}  // namespace ts
