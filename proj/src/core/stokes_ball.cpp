// SPDX-License-Identifier: Apache-2.0
#include "core/stokes_ball.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/modal_spectrum.hpp"

namespace ts {

using Eigen::VectorXd;

ModalStokesSolver::ModalStokesSolver(std::shared_ptr<const ChebGrid> grid, int l,
                                     double body_force_grad_coeff)
    : grid_(grid),
      l_(l),
      tau_(body_force_grad_coeff),
      poisson_(grid, l, VectorXd::Zero(grid->size())) {
  if (l < 0) throw DomainError("modal Stokes: l must be >= 0");
}

ModalStokesSolution ModalStokesSolver::solve(const VectorXd& source,
                                             ModalTraction traction) const {
  const ChebGrid& g = *grid_;
  const int N = g.n();
  const int l = l_;
  const VectorXd& r = g.nodes();

  // particular gradient field v_p = grad(S Y), Delta_l S = phi, S(1) = 0
  VectorXd S = poisson_.solve(source, 0.0);
  const double Sp1 = g.d1().row(N).dot(S);
  const double Spp1 = source(N) - 2.0 * Sp1;  // from the ODE at r = 1, S(1) = 0
  const double phi1 = source(N);

  // tractions at r = 1 for T_n = 2 A'(1) - P_eff(1), T_t = A(1) + B'(1) - B(1),
  // with the effective stress pressure P_eff = psi + (2/3) phi
  const double Tn_p = 2.0 * Spp1 - (tau_ + 5.0 / 3.0) * phi1;
  const double Tt_p = 2.0 * Sp1;

  ModalStokesSolution out;
  double c1 = 0.0, cq = 0.0;

  if (l == 0) {
    // no tangential structure; the constant pressure mode carries no velocity
    // and enters the normal traction as T_n = 2 S''(1) - (tau + 5/3) phi(1) - c_q
    cq = Tn_p - traction.normal;
  } else {
    // homogeneous basis tractions (exact)
    const double Tn1 = 2.0 * l * (l - 1);
    const double Tt1 = 2.0 * (l - 1);
    const double Tnq = (double(l) * l - l - 3.0) / (2 * l + 3);
    const double Ttq = double(l) * (l + 2) / (double(l + 1) * (2 * l + 3));
    const double bn = traction.normal - Tn_p;
    const double bt = traction.tangent - Tt_p;

    if (l == 1) {
      // solvable iff the rigid-translation compatibility holds: bn = 2*...
      out.compatibility_residual = bn + 2.0 * bt;
      const double scale =
          1.0 + std::abs(traction.normal) + std::abs(traction.tangent) + std::abs(phi1);
      if (std::abs(out.compatibility_residual) > 1e-7 * scale)
        throw DomainError("modal Stokes: incompatible rigid-motion traction data at l = 1");
      cq = bt / Ttq;
      c1 = -cq / 10.0;  // zero-mean-velocity gauge; v_p is mean-free since S(1) = 0
    } else {
      const double det = Tn1 * Ttq - Tnq * Tt1;
      c1 = (bn * Ttq - Tnq * bt) / det;
      cq = (Tn1 * bt - bn * Tt1) / det;
    }
  }

  out.c1 = c1;
  out.cq = cq;

  // assemble profiles
  VectorXd A = g.d1() * S;
  VectorXd B(N + 1), p(N + 1);
  const double aq = l / (2.0 * (2 * l + 3));            // A_q = aq r^{l+1}
  const double bq = (l + 3.0) / (2.0 * (l + 1) * (2 * l + 3));
  for (int i = 0; i <= N; ++i) {
    const double rl = std::pow(r(i), l);
    const double rlm1 = (l == 0) ? 0.0 : std::pow(r(i), l - 1);
    A(i) += c1 * l * rlm1 + cq * aq * rl * r(i);
    p(i) = (1.0 + tau_) * source(i) + cq * rl;
    B(i) = (l == 0) ? 0.0 : S(i) / r(i) + c1 * rlm1 + cq * bq * rl * r(i);
  }
  out.u_r = A;
  out.u_t = B;
  out.p = p;
  out.u_r_1 = Sp1 + c1 * l + cq * aq;
  return out;
}

double modal_J(const ModalStokesSolver& solver, const UnitStationaryState& st,
               const VectorXd& w) {
  const ChebGrid& g = solver.grid();
  VectorXd phi(g.size());
  for (int i = 0; i < g.size(); ++i) phi(i) = st.g.derivative(st.sigma(i)) * w(i);
  return solver.solve(phi, ModalTraction{}).u_r_1;
}

double modal_J(int l, const UnitStationaryState& st, const VectorXd& w) {
  ModalStokesSolver solver(st.grid, l);
  return modal_J(solver, st, w);
}

double bgamma_via_stokes(int l, double gamma, const UnitStationaryState& st) {
  ModalStokesSolver solver(st.grid, l);
  ModalSolveResult Fl = solve_Fl(l, st);
  const ChebGrid& g = *st.grid;
  VectorXd phi(g.size());
  for (int i = 0; i < g.size(); ++i) phi(i) = st.g.derivative(st.sigma(i)) * Fl.u(i);
  const double g1 = st.g1();
  ModalTraction tr;
  tr.normal = gamma * (1.0 - 0.5 * l * (l + 1)) + 4.0 * g1;
  tr.tangent = -2.0 * g1;
  return solver.solve(phi, tr).u_r_1 + g1;
}

}  // namespace ts
