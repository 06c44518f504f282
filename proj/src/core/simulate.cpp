// SPDX-License-Identifier: Apache-2.0
#include "core/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "core/errors.hpp"
#include "core/radial_ode.hpp"

namespace ts {

using Eigen::MatrixXd;
using Eigen::VectorXd;

RateFit fit_exponential_rate(const std::vector<double>& t, const std::vector<double>& y,
                             double window_skip) {
  if (t.size() != y.size() || t.size() < 4)
    throw DomainError("rate fit: need at least 4 samples");
  const size_t start = size_t(window_skip * t.size());
  const size_t n = t.size() - start;
  if (n < 3) throw DomainError("rate fit: window too small");

  double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
  for (size_t k = start; k < t.size(); ++k) {
    if (!(y[k] > 0.0)) throw DomainError("rate fit: nonpositive sample in fit window");
    const double ly = std::log(y[k]);
    st += t[k]; sy += ly; stt += t[k] * t[k]; sty += t[k] * ly; syy += ly * ly;
  }
  const double det = n * stt - st * st;
  RateFit fit;
  fit.rate = (n * sty - st * sy) / det;
  const double ss_tot = syy - sy * sy / n;
  const double intercept = (sy - fit.rate * st) / n;
  double ss_res = 0;
  for (size_t k = start; k < t.size(); ++k) {
    const double e = std::log(y[k]) - (intercept + fit.rate * t[k]);
    ss_res += e * e;
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

LinearModalTrajectory evolve_linear_mode(const ModalBlockOperator& op, const VectorXd& phi0,
                                         double c0, double T, double dt, Stepper stepper) {
  const MatrixXd& M = op.M;
  const int n = int(M.rows());
  VectorXd x(n);
  x.head(n - 1) = phi0;
  x(n - 1) = c0;

  const int steps = std::max(1, int(std::llround(T / dt)));

  LinearModalTrajectory traj;
  traj.times.reserve(steps + 1);
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.c_values.push_back(x(n - 1));
    traj.phi_norms.push_back(x.head(n - 1).cwiseAbs().maxCoeff());
  };
  record(0.0);

  if (stepper == Stepper::ExplicitRK4) {
    Eigen::EigenSolver<MatrixXd> es(M);
    const double rad = es.eigenvalues().cwiseAbs().maxCoeff();
    if (dt * rad > 2.5)
      throw ConfigError("explicit stepper unstable: dt * spectral radius = " +
                        std::to_string(dt * rad) + " > 2.5");
    for (int k = 0; k < steps; ++k) {
      VectorXd k1 = M * x;
      VectorXd k2 = M * (x + 0.5 * dt * k1);
      VectorXd k3 = M * (x + 0.5 * dt * k2);
      VectorXd k4 = M * (x + dt * k3);
      x += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
      record((k + 1) * dt);
    }
  } else {
    // TR-BDF2, L-stable second order; both stage matrices factored once
    const double gam = 2.0 - std::sqrt(2.0);
    const MatrixXd I = MatrixXd::Identity(n, n);
    Eigen::PartialPivLU<MatrixXd> lu1(I - 0.5 * gam * dt * M);
    Eigen::PartialPivLU<MatrixXd> lu2(I - (1.0 - gam) / (2.0 - gam) * dt * M);
    const double a1 = 1.0 / (gam * (2.0 - gam));
    const double a0 = (1.0 - gam) * (1.0 - gam) / (gam * (2.0 - gam));
    for (int k = 0; k < steps; ++k) {
      VectorXd xs = lu1.solve(x + 0.5 * gam * dt * (M * x));
      x = lu2.solve(a1 * xs - a0 * x);
      record((k + 1) * dt);
    }
  }

  std::vector<double> absc(traj.c_values.size());
  for (size_t k = 0; k < absc.size(); ++k) absc[k] = std::abs(traj.c_values[k]);
  RateFit fit = fit_exponential_rate(traj.times, absc);
  traj.fitted_rate = fit.rate;
  traj.fit_r2 = fit.r2;
  return traj;
}

namespace {

struct RadialSystem {
  const ChebGrid& grid;
  const RateFunction& f;
  const RateFunction& g;
  double epsilon;

  double feval(double s) const {
    const double hi = f.sigma_max();
    if (s < 0.0) return f.eval(0.0) + f.derivative(0.0) * s;
    if (s > hi) return f.eval(hi) + f.derivative(hi) * (s - hi);
    return f.eval(s);
  }
  double fprime(double s) const { return f.derivative(std::clamp(s, 0.0, f.sigma_max())); }
  double geval(double s) const {
    const double hi = g.sigma_max();
    if (s < 0.0) return g.eval(0.0) + g.derivative(0.0) * s;
    if (s > hi) return g.eval(hi) + g.derivative(hi) * (s - hi);
    return g.eval(s);
  }
  double gprime(double s) const { return g.derivative(std::clamp(s, 0.0, g.sigma_max())); }

  // growth moment I(sigma) = \int_0^1 g(sigma) s^2 ds on the mapped domain
  double growth_moment(const VectorXd& sig_full) const {
    const VectorXd& s = grid.nodes();
    double I = 0;
    for (int i = 0; i < grid.size(); ++i)
      I += grid.weights()(i) * geval(sig_full(i)) * s(i) * s(i);
    return I;
  }

  // dofs: sigma at nodes 0..N-1, then R
  VectorXd rhs(const VectorXd& y) const {
    const int N = grid.n();
    const VectorXd& s = grid.nodes();
    VectorXd sig(N + 1);
    sig.head(N) = y.head(N);
    sig(N) = 1.0;
    const double R = y(N);
    const VectorXd d1 = grid.d1() * sig;
    const VectorXd d2 = grid.d2() * sig;
    const double I = growth_moment(sig);

    VectorXd out(N + 1);
    out(0) = (3.0 * d2(0) / (R * R) - feval(sig(0))) / epsilon;
    for (int i = 1; i < N; ++i) {
      const double lap = d2(i) + 2.0 / s(i) * d1(i);
      out(i) = (lap / (R * R) - feval(sig(i))) / epsilon + s(i) * I * d1(i);
    }
    out(N) = R * I;
    return out;
  }

  MatrixXd jacobian(const VectorXd& y) const {
    const int N = grid.n();
    const VectorXd& s = grid.nodes();
    const MatrixXd& D1 = grid.d1();
    const MatrixXd& D2 = grid.d2();
    VectorXd sig(N + 1);
    sig.head(N) = y.head(N);
    sig(N) = 1.0;
    const double R = y(N);
    const VectorXd d1 = D1 * sig;
    const VectorXd d2 = D2 * sig;
    const double I = growth_moment(sig);

    MatrixXd J = MatrixXd::Zero(N + 1, N + 1);
    // dI/dsigma_j
    VectorXd dI(N);
    for (int j = 0; j < N; ++j)
      dI(j) = grid.weights()(j) * gprime(sig(j)) * s(j) * s(j);

    J.row(0).head(N) = (3.0 / (R * R)) * D2.row(0).head(N) / epsilon;
    J(0, 0) -= fprime(sig(0)) / epsilon;
    J(0, N) = -2.0 * (3.0 * d2(0)) / (R * R * R) / epsilon;
    for (int i = 1; i < N; ++i) {
      const double lap = d2(i) + 2.0 / s(i) * d1(i);
      J.row(i).head(N) =
          ((D2.row(i).head(N) + (2.0 / s(i)) * D1.row(i).head(N)) / (R * R)) / epsilon +
          s(i) * I * D1.row(i).head(N);
      J.row(i).head(N) += s(i) * d1(i) * dI.transpose();
      J(i, i) -= fprime(sig(i)) / epsilon;
      J(i, N) = -2.0 * lap / (R * R * R) / epsilon;
    }
    J.row(N).head(N) = R * dI.transpose();
    J(N, N) = I;
    return J;
  }
};

// one TR-BDF2 stage: solve z - a*dt*rhs(z) = b by Newton
VectorXd implicit_stage(const RadialSystem& sys, const VectorXd& b, double a_dt,
                        const VectorXd& guess) {
  VectorXd z = guess;
  VectorXd best = z;
  double best_rn = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (int it = 0; it < 12; ++it) {
    const VectorXd fz = sys.rhs(z);
    VectorXd res = z - a_dt * fz - b;
    const double rn = res.cwiseAbs().maxCoeff();
    scale = std::max({1.0, z.cwiseAbs().maxCoeff(), a_dt * fz.cwiseAbs().maxCoeff()});
    if (rn < best_rn) { best_rn = rn; best = z; }
    if (rn < 1e-12 * scale) return z;
    if (rn > 2.0 * best_rn) break;  // stagnating at the roundoff floor
    MatrixXd J = -a_dt * sys.jacobian(z);
    J.diagonal().array() += 1.0;
    z -= J.partialPivLu().solve(res);
  }
  if (best_rn > 1e-8 * scale) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "radial simulation: implicit stage Newton failed (residual %.3e)", best_rn);
    throw SolverError(msg);
  }
  return best;
}

}  // namespace

RadialTrajectory simulate_radial_nonlinear(const RateFunction& f, const RateFunction& g,
                                           double epsilon, double R0, const VectorXd& sigma0,
                                           double T, double dt, const RadialSimOptions& opts) {
  if (R0 <= 0) throw DomainError("radial simulation: R0 must be positive");
  ChebGrid grid(opts.n_radial, opts.r0, 1.0);
  const int N = grid.n();

  auto quasi_static = [&](double R, const VectorXd* guess) {
    RateFunction fs = f.scaled(R * R);
    return solve_nutrient_profile(fs, grid, nullptr, nullptr, guess);
  };

  VectorXd sig;
  if (sigma0.size() == 0) {
    sig = quasi_static(R0, nullptr);
  } else {
    if (sigma0.size() != grid.size())
      throw DomainError("radial simulation: sigma0 size mismatch with grid");
    if (std::abs(sigma0(N) - 1.0) > 1e-9)
      throw DomainError("radial simulation: sigma0 incompatible with boundary value 1");
    sig = sigma0;
  }

  RadialTrajectory traj;
  const int steps = std::max(1, int(std::llround(T / dt)));
  double R = R0;
  double t = 0.0;

  RadialSystem sys{grid, f, g, epsilon};
  auto moment = [&](const VectorXd& sfull) { return sys.growth_moment(sfull); };

  auto record = [&]() {
    traj.times.push_back(t);
    traj.R.push_back(R);
    traj.sigma_center.push_back(sig(0));
  };
  record();

  double G_prev = R * R * R * moment(sig);  // d/dt (R^3/3)

  if (epsilon == 0.0) {
    for (int k = 0; k < steps; ++k) {
      // RK4 on R with the quasi-static nutrient solve at every stage
      auto Rdot = [&](double Rst, VectorXd& sg) {
        sg = quasi_static(Rst, &sg);
        return Rst * moment(sg);
      };
      VectorXd s1 = sig, s2 = sig, s3 = sig, s4 = sig;
      const double k1 = Rdot(R, s1);
      const double k2 = Rdot(R + 0.5 * dt * k1, s2);
      const double k3 = Rdot(R + 0.5 * dt * k2, s3);
      const double k4 = Rdot(R + dt * k3, s4);
      const double Rn = R + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      const double R3_old = R * R * R;
      R = Rn;
      t = (k + 1) * dt;
      sig = quasi_static(R, &sig);
      const double G_new = R * R * R * moment(sig);
      traj.volume_balance_max =
          std::max(traj.volume_balance_max,
                   std::abs((R * R * R - R3_old) / (3.0 * dt) - 0.5 * (G_prev + G_new)));
      G_prev = G_new;
      if ((k + 1) % opts.record_stride == 0 || k + 1 == steps) record();
      if (R < opts.R_min || R > opts.R_max) { traj.blew_up = true; break; }
    }
  } else {
    const double gam = 2.0 - std::sqrt(2.0);
    VectorXd y(N + 1);
    y.head(N) = sig.head(N);
    y(N) = R;
    for (int k = 0; k < steps; ++k) {
      // TR stage to t + gam*dt, then BDF2 closure
      VectorXd b1 = y + 0.5 * gam * dt * sys.rhs(y);
      VectorXd ys = implicit_stage(sys, b1, 0.5 * gam * dt, y);
      const double a1 = 1.0 / (gam * (2.0 - gam));
      const double a0 = (1.0 - gam) * (1.0 - gam) / (gam * (2.0 - gam));
      VectorXd b2 = a1 * ys - a0 * y;
      y = implicit_stage(sys, b2, (1.0 - gam) / (2.0 - gam) * dt, ys);

      const double R3_old = R * R * R;
      R = y(N);
      t = (k + 1) * dt;
      sig.head(N) = y.head(N);
      sig(N) = 1.0;
      const double G_new = R * R * R * moment(sig);
      traj.volume_balance_max =
          std::max(traj.volume_balance_max,
                   std::abs((R * R * R - R3_old) / (3.0 * dt) - 0.5 * (G_prev + G_new)));
      G_prev = G_new;
      if ((k + 1) % opts.record_stride == 0 || k + 1 == steps) record();
      if (R < opts.R_min || R > opts.R_max) { traj.blew_up = true; break; }
    }
  }

  traj.sigma_final = sig;
  return traj;
}

}  // namespace ts
