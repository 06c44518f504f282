// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <memory>

#include "core/chebyshev.hpp"
#include "core/radial_ode.hpp"
#include "core/stationary.hpp"

namespace ts {

// Modal Stokes solver on the unit ball. For a single spherical-harmonic
// mode Y = Y_{lm}, solves
//   div v = phi(r) Y,   -Delta v + grad psi = tau grad(phi Y),
// with prescribed surface tractions
//   (T(v, psi) n) . n     = h_n Y,
//   (T(v, psi) n) . tang  = h_t  (coefficient of grad_omega Y),
// where T is the Newtonian stress and tau the body-force gradient
// coefficient. The velocity ansatz is poloidal,
//   v = A(r) Y e_r + B(r) grad_omega Y.
//
// Construction: with chi = psi - tau phi one has -Delta v + grad chi = 0, so
// chi = phi + c_q r^l exactly and v splits into a gradient particular part
// v_p = grad(S Y) with Delta(S Y) = phi Y, S(1) = 0, plus the regular
// homogeneous solutions c_1 grad(r^l Y) and c_q times the Lamb field carrying
// the pressure r^l Y. Only one scalar modal Poisson solve is needed; the two
// traction conditions determine (c_1, c_q).
//
// l = 1: the traction data must satisfy the rigid-translation compatibility
// condition h_n + 2 h_t + (tau - 1/3) phi(1) = 0; the translation gauge is
// fixed by zero mean velocity. l = 0: only the normal traction applies.

struct ModalTraction {
  double normal = 0.0;
  double tangent = 0.0;
};

struct ModalStokesSolution {
  Eigen::VectorXd u_r;  // A(r)
  Eigen::VectorXd u_t;  // B(r); zero for l = 0
  Eigen::VectorXd p;    // actual pressure psi = (1 + tau) phi + c_q r^l
  double u_r_1 = 0.0;   // boundary normal velocity A(1)
  double c1 = 0.0, cq = 0.0;
  double compatibility_residual = 0.0;  // l = 1 diagnostics
};

class ModalStokesSolver {
public:
  ModalStokesSolver(std::shared_ptr<const ChebGrid> grid, int l,
                    double body_force_grad_coeff = 1.0 / 3.0);

  /// source = phi at the grid nodes.
  ModalStokesSolution solve(const Eigen::VectorXd& source, ModalTraction traction) const;

  int l() const { return l_; }
  const ChebGrid& grid() const { return *grid_; }

private:
  std::shared_ptr<const ChebGrid> grid_;
  int l_;
  double tau_;
  ModalDirectSolver poisson_;
};

/// Boundary normal velocity of the zero-traction cell problem with source
/// g'(sigma_s) w: the functional j_l[w] entering the slow spectral branch.
double modal_J(const ModalStokesSolver& solver, const UnitStationaryState& st,
               const Eigen::VectorXd& w);
double modal_J(int l, const UnitStationaryState& st, const Eigen::VectorXd& w);

/// Slow eigenvalue b_l(gamma) recovered through the Stokes solver: solves the
/// full quasi-stationary boundary perturbation problem for mode l and returns
/// u_r(1) + g(1). Independent of the closed-form alpha_l(gamma).
double bgamma_via_stokes(int l, double gamma, const UnitStationaryState& st);

}  // namespace ts
