// SPDX-License-Identifier: Apache-2.0
#include "core/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "core/errors.hpp"
#include "core/radial_ode.hpp"

namespace ts {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Rate evaluation with linear extension outside [0, sigma_max]: Newton
// iterates or overshooting interpolants never leave the evaluable range,
// while converged profiles stay inside the physical domain.
std::function<double(double)> safe_eval(const RateFunction& f) {
  const double hi = f.sigma_max();
  return [&f, hi](double s) {
    if (s < 0.0) return f.eval(0.0) + f.derivative(0.0) * s;
    if (s > hi) return f.eval(hi) + f.derivative(hi) * (s - hi);
    return f.eval(s);
  };
}
std::function<double(double)> safe_deriv(const RateFunction& f) {
  const double hi = f.sigma_max();
  return [&f, hi](double s) { return f.derivative(std::clamp(s, 0.0, hi)); };
}

}  // namespace

VectorXd solve_nutrient_profile(const RateFunction& f, const ChebGrid& grid,
                                double* sigma_prime_R, double* residual,
                                const VectorXd* guess, double tol) {
  NutrientSolve s = solve_nutrient_bvp(grid, safe_eval(f), safe_deriv(f), guess, tol);
  if (sigma_prime_R) *sigma_prime_R = s.sigma_prime_R;
  if (residual) *residual = s.residual;
  return s.sigma;
}

double growth_integral(const RateFunction& g, const ChebGrid& grid, const VectorXd& sigma) {
  const VectorXd& r = grid.nodes();
  VectorXd integrand(grid.size());
  for (int i = 0; i < grid.size(); ++i) integrand(i) = g.eval(sigma(i)) * r(i) * r(i);
  // the missed [0, r0] piece is O(r0^3)
  return grid.integrate(integrand);
}

VectorXd velocity_profile(const RateFunction& g, const ChebGrid& grid, const VectorXd& sigma) {
  const int N = grid.n();
  const VectorXd& r = grid.nodes();
  // r v' + 2 v = r g(sigma) with the series start v(r0) = g(sigma(r0)) r0 / 3.
  // Solving for v directly (rather than for h = r^2 v) keeps the inner
  // region well-conditioned: dividing h by r^2 ~ 1e-12 amplifies roundoff
  // into the boundary derivatives of v.
  MatrixXd A = r.asDiagonal() * grid.d1();
  A.diagonal().array() += 2.0;
  VectorXd rhs(N + 1);
  for (int i = 0; i <= N; ++i) rhs(i) = r(i) * g.eval(sigma(i));
  A.row(0).setZero();
  A(0, 0) = 1.0;
  rhs(0) = g.eval(sigma(0)) * r(0) / 3.0;
  return A.partialPivLu().solve(rhs);
}

VectorXd pressure_profile(const RateFunction& g, const VectorXd& sigma, double gamma) {
  VectorXd p(sigma.size());
  for (int i = 0; i < sigma.size(); ++i) p(i) = 4.0 / 3.0 * g.eval(sigma(i)) + gamma;
  return p;
}

double find_stationary_radius(const RateFunction& f, const RateFunction& g,
                              const StationaryOptions& opts) {
  auto total_growth = [&](double R) {
    ChebGrid grid(opts.n_radial, opts.r0, R);
    VectorXd sigma = solve_nutrient_profile(f, grid, nullptr, nullptr, nullptr, opts.newton_tol);
    return growth_integral(g, grid, sigma);
  };

  // geometric scan for a sign change
  const int np = opts.scan_points;
  const double lr0 = std::log(opts.r_min), lr1 = std::log(opts.r_max);
  double prevR = std::exp(lr0);
  double prevG = total_growth(prevR);
  double lo = 0.0, hi = 0.0, Glo = 0.0, Ghi = 0.0;
  bool bracketed = false;
  for (int k = 1; k < np; ++k) {
    const double R = std::exp(lr0 + (lr1 - lr0) * k / (np - 1));
    const double G = total_growth(R);
    if ((prevG <= 0.0) != (G <= 0.0)) {
      lo = prevR; hi = R; Glo = prevG; Ghi = G; bracketed = true; break;
    }
    prevR = R; prevG = G;
  }
  if (!bracketed)
    throw SolverError("stationary radius: no sign change of total growth in scan bracket");

  // bisection with a secant accelerant; stop on |G| <= growth_tol
  double R = lo, G = Glo;
  for (int it = 0; it < 200; ++it) {
    double Rsec = hi - Ghi * (hi - lo) / (Ghi - Glo);
    if (!(Rsec > lo && Rsec < hi)) Rsec = 0.5 * (lo + hi);
    R = Rsec;
    G = total_growth(R);
    if (std::abs(G) <= opts.growth_tol) return R;
    if ((G < 0.0) == (Glo < 0.0)) { lo = R; Glo = G; } else { hi = R; Ghi = G; }
    if (hi - lo < 1e-15 * hi) break;
  }
  if (std::abs(G) > opts.growth_tol)
    throw SolverError("stationary radius: root refinement stalled, |G| = " + std::to_string(G));
  return R;
}

UnitStationaryState rescale_to_unit(const RateFunction& f, const RateFunction& g,
                                    const ModelParams& params, double R_s,
                                    const StationaryOptions& opts) {
  UnitStationaryState st;
  st.R_s = R_s;
  st.f = f.scaled(R_s * R_s);
  st.g = g.scaled(R_s * R_s);
  st.gamma = params.gamma;
  st.epsilon = params.epsilon;
  st.grid = std::make_shared<ChebGrid>(opts.n_radial, opts.r0, 1.0);
  st.sigma = solve_nutrient_profile(st.f, *st.grid, &st.sigma_prime_1, &st.nutrient_residual,
                                    nullptr, opts.newton_tol);
  st.v = velocity_profile(st.g, *st.grid, st.sigma);
  st.p = pressure_profile(st.g, st.sigma, params.gamma);
  st.growth_residual = std::abs(growth_integral(st.g, *st.grid, st.sigma));
  return st;
}

UnitStationaryState compute_unit_stationary(const RateFunction& f, const RateFunction& g,
                                            const ModelParams& params,
                                            const StationaryOptions& opts) {
  const double R_s = find_stationary_radius(f, g, opts);
  return rescale_to_unit(f, g, params, R_s, opts);
}

}  // namespace ts
