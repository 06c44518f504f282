// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace ts {

/// Delta_omega Y_lm = -l(l+1) Y_lm.
inline double laplace_beltrami_multiplier(int l) { return -double(l) * (l + 1); }

/// Gauss–Legendre x uniform-longitude quadrature grid for band limit L:
/// (L+1) colatitude nodes, (2L+2) longitudes. Exact for products of
/// harmonics up to degree L; poles are never nodes.
class SphereGrid {
public:
  explicit SphereGrid(int L);

  int L() const { return L_; }
  int n_theta() const { return int(theta_.size()); }
  int n_phi() const { return n_phi_; }
  int size() const { return n_theta() * n_phi_; }
  int index(int it, int ip) const { return it * n_phi_ + ip; }

  const Eigen::VectorXd& theta() const { return theta_; }
  double phi(int ip) const { return 2.0 * M_PI * ip / n_phi_; }
  /// quadrature weight of node (it, ip): w_GL(it) * 2 pi / n_phi
  double weight(int it) const { return w_(it) * 2.0 * M_PI / n_phi_; }

private:
  int L_, n_phi_;
  Eigen::VectorXd theta_, w_;
};

/// Real spherical-harmonic coefficients c_lm, l <= L, packed at l*l + l + m.
struct SphereFunction {
  int L = 0;
  Eigen::VectorXd coeffs;

  static int index(int l, int m) { return l * l + l + m; }
  static SphereFunction zero(int L) {
    return {L, Eigen::VectorXd::Zero((L + 1) * (L + 1))};
  }
  double& at(int l, int m) { return coeffs(index(l, m)); }
  double at(int l, int m) const { return coeffs(index(l, m)); }
};

/// Basis tables (values and colatitude derivatives) on a SphereGrid, with
/// analysis/synthesis transforms. Longitude derivatives act on coefficients
/// (the cos/sin pairing), so no extra tables are needed; second colatitude
/// derivatives come from the associated Legendre ODE.
class SphereHarmonics {
public:
  explicit SphereHarmonics(std::shared_ptr<const SphereGrid> grid);

  const SphereGrid& grid() const { return *grid_; }
  int L() const { return grid_->L(); }

  Eigen::VectorXd synthesize(const SphereFunction& f) const;          // values
  Eigen::VectorXd synthesize_dtheta(const SphereFunction& f) const;   // d/dtheta
  Eigen::VectorXd synthesize_dtheta2(const SphereFunction& f) const;  // d2/dtheta2
  SphereFunction analyze(const Eigen::VectorXd& nodal) const;

  /// Coefficients of d/dphi f (exact: pairs m with -m).
  static SphereFunction dphi(const SphereFunction& f);
  /// Coefficients of Delta_omega f.
  static SphereFunction laplace_beltrami(const SphereFunction& f);

  /// All Y_lm (l <= L) at an arbitrary direction, packed like coefficients.
  Eigen::VectorXd basis_at(double theta, double phi) const;

private:
  std::shared_ptr<const SphereGrid> grid_;
  // full nodal basis matrices (node, coeff index)
  Eigen::MatrixXd B_, Bt_, Btt_;
};

/// Exact/linearized mean curvature of the surface r = 1 + rho(omega) at the
/// quadrature nodes. Convention: kappa = 1 on the unit sphere, positive for
/// convex surfaces; linearized mode is 1 - (rho + Delta_omega rho / 2)
/// applied spectrally.
Eigen::VectorXd mean_curvature_nodal(const SphereFunction& rho, bool exact,
                                     const SphereHarmonics& sh);
SphereFunction mean_curvature_perturbed(const SphereFunction& rho, bool exact,
                                        const SphereHarmonics& sh);

/// Outward unit normal (exact) or its linearization n0 - grad_omega rho,
/// as Cartesian vectors per quadrature node (3 x size).
Eigen::Matrix3Xd normal_perturbed(const SphereFunction& rho, bool exact,
                                  const SphereHarmonics& sh);

struct HanzawaMapSpec {
  SphereFunction rho;
  double delta = 0.1;
};

/// Cutoff profile: 1 for |tau| <= delta, 0 for |tau| >= 3 delta, C^2
/// polynomial blend with |chi'| <= 153/(256 delta) < 2/(3 delta).
double hanzawa_chi(double tau, double delta);

/// Phi_rho(x) = x + chi(|x| - 1) Pi_1(rho)(x) x/|x| with Pi_1 the harmonic
/// extension (r^l inside, r^{-l-1} outside). Throws if ||rho||_inf >= delta.
Eigen::Vector3d hanzawa_map(const HanzawaMapSpec& spec, const SphereHarmonics& sh,
                            const Eigen::Vector3d& x);

}  // namespace ts
