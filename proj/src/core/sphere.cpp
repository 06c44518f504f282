// SPDX-License-Identifier: Apache-2.0
#include "core/sphere.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace ts {

using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

// Gauss–Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, VectorXd& x, VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x(n - 1 - i) = t;  // ascending
    w(n - 1 - i) = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

// Fully normalized associated Legendre values N(l, m) and theta-derivatives
// at x = cos(theta), s = sin(theta) > 0 (Condon–Shortley phase included).
void legendre_tables(int L, double x, double s, MatrixXd& N, MatrixXd& Nd) {
  N.setZero(L + 1, L + 1);
  Nd.setZero(L + 1, L + 1);
  N(0, 0) = std::sqrt(0.25 / M_PI);
  for (int m = 1; m <= L; ++m)
    N(m, m) = -std::sqrt((2.0 * m + 1) / (2.0 * m)) * s * N(m - 1, m - 1);
  for (int m = 0; m < L; ++m) N(m + 1, m) = std::sqrt(2.0 * m + 3) * x * N(m, m);
  for (int m = 0; m <= L; ++m) {
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1) / (double(l) * l - double(m) * m));
      const double ap = std::sqrt((4.0 * (l - 1.0) * (l - 1) - 1) /
                                  ((l - 1.0) * (l - 1) - double(m) * m));
      N(l, m) = a * (x * N(l - 1, m) - N(l - 2, m) / ap);
    }
    for (int l = m; l <= L; ++l) {
      const double below = (l > m) ? N(l - 1, m) : 0.0;
      const double c =
          std::sqrt((double(l) * l - double(m) * m) * (2.0 * l + 1) / (2.0 * l - 1));
      Nd(l, m) = (l * x * N(l, m) - c * below) / s;
    }
  }
}

}  // namespace

SphereGrid::SphereGrid(int L) : L_(L), n_phi_(2 * L + 2) {
  if (L < 0) throw DomainError("sphere grid: L must be >= 0");
  VectorXd x;
  gauss_legendre(L + 1, x, w_);
  theta_.resize(L + 1);
  // x ascending => theta descending; store theta ascending instead
  for (int i = 0; i <= L; ++i) theta_(i) = std::acos(x(L - i));
  w_ = w_.reverse().eval();
}

SphereHarmonics::SphereHarmonics(std::shared_ptr<const SphereGrid> grid)
    : grid_(std::move(grid)) {
  const SphereGrid& g = *grid_;
  const int L = g.L();
  const int nb = (L + 1) * (L + 1);
  B_.resize(g.size(), nb);
  Bt_.resize(g.size(), nb);
  Btt_.resize(g.size(), nb);

  MatrixXd N, Nd;
  for (int it = 0; it < g.n_theta(); ++it) {
    const double th = g.theta()(it);
    const double x = std::cos(th), s = std::sin(th);
    legendre_tables(L, x, s, N, Nd);
    const double cot = x / s;
    for (int ip = 0; ip < g.n_phi(); ++ip) {
      const double ph = g.phi(ip);
      const int row = g.index(it, ip);
      for (int l = 0; l <= L; ++l) {
        for (int m = -l; m <= l; ++m) {
          const int am = std::abs(m);
          double trig = 1.0;
          if (m > 0) trig = std::sqrt(2.0) * std::cos(m * ph);
          if (m < 0) trig = std::sqrt(2.0) * std::sin(am * ph);
          const int col = SphereFunction::index(l, m);
          B_(row, col) = N(l, am) * trig;
          Bt_(row, col) = Nd(l, am) * trig;
          // associated Legendre ODE: S'' = -cot S' - (l(l+1) - m^2/sin^2) S
          Btt_(row, col) =
              -cot * Bt_(row, col) -
              (double(l) * (l + 1) - double(am) * am / (s * s)) * B_(row, col);
        }
      }
    }
  }
}

VectorXd SphereHarmonics::synthesize(const SphereFunction& f) const { return B_ * f.coeffs; }
VectorXd SphereHarmonics::synthesize_dtheta(const SphereFunction& f) const {
  return Bt_ * f.coeffs;
}
VectorXd SphereHarmonics::synthesize_dtheta2(const SphereFunction& f) const {
  return Btt_ * f.coeffs;
}

SphereFunction SphereHarmonics::analyze(const VectorXd& nodal) const {
  const SphereGrid& g = *grid_;
  VectorXd wf(nodal.size());
  for (int it = 0; it < g.n_theta(); ++it)
    for (int ip = 0; ip < g.n_phi(); ++ip)
      wf(g.index(it, ip)) = g.weight(it) * nodal(g.index(it, ip));
  SphereFunction f;
  f.L = g.L();
  f.coeffs = B_.transpose() * wf;
  return f;
}

SphereFunction SphereHarmonics::dphi(const SphereFunction& f) {
  SphereFunction out = SphereFunction::zero(f.L);
  for (int l = 0; l <= f.L; ++l) {
    for (int m = 1; m <= l; ++m) {
      out.at(l, -m) += -m * f.at(l, m);
      out.at(l, m) += m * f.at(l, -m);
    }
  }
  return out;
}

SphereFunction SphereHarmonics::laplace_beltrami(const SphereFunction& f) {
  SphereFunction out = f;
  for (int l = 0; l <= f.L; ++l)
    for (int m = -l; m <= l; ++m) out.at(l, m) *= laplace_beltrami_multiplier(l);
  return out;
}

VectorXd SphereHarmonics::basis_at(double theta, double phi) const {
  const int L = grid_->L();
  MatrixXd N, Nd;
  const double s = std::sin(theta);
  legendre_tables(L, std::cos(theta), std::max(s, 1e-300), N, Nd);
  VectorXd out((L + 1) * (L + 1));
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int am = std::abs(m);
      double trig = 1.0;
      if (m > 0) trig = std::sqrt(2.0) * std::cos(m * phi);
      if (m < 0) trig = std::sqrt(2.0) * std::sin(am * phi);
      out(SphereFunction::index(l, m)) = N(l, am) * trig;
    }
  }
  return out;
}

VectorXd mean_curvature_nodal(const SphereFunction& rho, bool exact,
                              const SphereHarmonics& sh) {
  const SphereGrid& g = sh.grid();
  if (!exact) {
    // 1 - (rho + Delta_omega rho / 2), diagonal in the harmonic basis
    SphereFunction pert = rho;
    for (int l = 0; l <= rho.L; ++l)
      for (int m = -l; m <= l; ++m)
        pert.at(l, m) *= 1.0 + 0.5 * laplace_beltrami_multiplier(l);
    return VectorXd::Ones(g.size()) - sh.synthesize(pert);
  }

  const VectorXd h = VectorXd::Ones(g.size()) + sh.synthesize(rho);
  const VectorXd ht = sh.synthesize_dtheta(rho);
  const VectorXd htt = sh.synthesize_dtheta2(rho);
  const SphereFunction rp = SphereHarmonics::dphi(rho);
  const VectorXd hp = sh.synthesize(rp);
  const VectorXd htp = sh.synthesize_dtheta(rp);
  const VectorXd hpp = sh.synthesize(SphereHarmonics::dphi(rp));

  VectorXd kappa(g.size());
  for (int it = 0; it < g.n_theta(); ++it) {
    const double s = std::sin(g.theta()(it)), c = std::cos(g.theta()(it));
    for (int ip = 0; ip < g.n_phi(); ++ip) {
      const int i = g.index(it, ip);
      // surface X = h e_r; frame components (e_r, e_theta, e_phi)
      const double E = ht(i) * ht(i) + h(i) * h(i);
      const double F = ht(i) * hp(i);
      const double G = hp(i) * hp(i) + h(i) * h(i) * s * s;
      // X_theta x X_phi = (h^2 s, -h_t h s, -h h_p), outward
      Vector3d nv(h(i) * h(i) * s, -ht(i) * h(i) * s, -h(i) * hp(i));
      nv /= nv.norm();
      const Vector3d Xtt(htt(i) - h(i), 2.0 * ht(i), 0.0);
      const Vector3d Xtp(htp(i), hp(i), ht(i) * s + h(i) * c);
      const Vector3d Xpp(hpp(i) - h(i) * s * s, -h(i) * s * c, 2.0 * hp(i) * s);
      const double L2 = Xtt.dot(nv), M2 = Xtp.dot(nv), N2 = Xpp.dot(nv);
      kappa(i) = -(E * N2 - 2.0 * F * M2 + G * L2) / (2.0 * (E * G - F * F));
    }
  }
  return kappa;
}

SphereFunction mean_curvature_perturbed(const SphereFunction& rho, bool exact,
                                        const SphereHarmonics& sh) {
  return sh.analyze(mean_curvature_nodal(rho, exact, sh));
}

Eigen::Matrix3Xd normal_perturbed(const SphereFunction& rho, bool exact,
                                  const SphereHarmonics& sh) {
  const SphereGrid& g = sh.grid();
  const VectorXd ht = sh.synthesize_dtheta(rho);
  const VectorXd hp = sh.synthesize(SphereHarmonics::dphi(rho));
  const VectorXd h = VectorXd::Ones(g.size()) + sh.synthesize(rho);

  Eigen::Matrix3Xd out(3, g.size());
  for (int it = 0; it < g.n_theta(); ++it) {
    const double th = g.theta()(it);
    const double s = std::sin(th), c = std::cos(th);
    for (int ip = 0; ip < g.n_phi(); ++ip) {
      const double ph = g.phi(ip);
      const Vector3d er(s * std::cos(ph), s * std::sin(ph), c);
      const Vector3d eth(c * std::cos(ph), c * std::sin(ph), -s);
      const Vector3d eph(-std::sin(ph), std::cos(ph), 0.0);
      const int i = g.index(it, ip);
      Vector3d n;
      if (exact) {
        n = h(i) * h(i) * s * er - ht(i) * h(i) * s * eth - h(i) * hp(i) * eph;
        n.normalize();
      } else {
        n = er - (ht(i) * eth + hp(i) / s * eph);  // n0 - grad_omega rho
      }
      out.col(i) = n;
    }
  }
  return out;
}

double hanzawa_chi(double tau, double delta) {
  const double a = std::abs(tau);
  if (a <= delta) return 1.0;
  if (a >= 3.0 * delta) return 0.0;
  // chi' proportional to -(1 - u^8)^2 on the blend band: C^2, with
  // max |chi'| = 153/(256 delta) below the required 2/(3 delta)
  const double u = (a - 2.0 * delta) / delta;
  auto P = [](double v) {
    const double v8 = std::pow(v, 8);
    return v * (1.0 - 2.0 * v8 / 9.0 + v8 * v8 / 17.0);
  };
  return 1.0 - (153.0 / 256.0) * (P(u) - P(-1.0));
}

Vector3d hanzawa_map(const HanzawaMapSpec& spec, const SphereHarmonics& sh,
                     const Vector3d& x) {
  const double sup = sh.synthesize(spec.rho).cwiseAbs().maxCoeff();
  if (!(sup < spec.delta))
    throw DomainError("hanzawa map: ||rho||_inf must be below delta");

  const double r = x.norm();
  if (std::abs(r - 1.0) >= 3.0 * spec.delta || r == 0.0) return x;

  const double theta = std::acos(std::clamp(x(2) / r, -1.0, 1.0));
  const double phi = std::atan2(x(1), x(0));
  const VectorXd basis = sh.basis_at(theta, phi);

  double pi1 = 0.0;
  for (int l = 0; l <= spec.rho.L; ++l) {
    const double rad = (r <= 1.0) ? std::pow(r, l) : std::pow(r, -l - 1);
    for (int m = -l; m <= l; ++m)
      pi1 += spec.rho.at(l, m) * rad * basis(SphereFunction::index(l, m));
  }
  return x + hanzawa_chi(r - 1.0, spec.delta) * pi1 * (x / r);
}

}  // namespace ts
