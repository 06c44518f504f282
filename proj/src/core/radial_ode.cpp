// SPDX-License-Identifier: Apache-2.0
#include "core/radial_ode.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "core/errors.hpp"

namespace ts {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

ModalSolveResult solve_modal_m(const ChebGrid& grid, int l, const VectorXd& w,
                               const VectorXd& h, double bc) {
  const int N = grid.n();
  const VectorXd& r = grid.nodes();
  const MatrixXd& D1 = grid.d1();
  const MatrixXd& D2 = grid.d2();

  MatrixXd A = D2;
  for (int i = 0; i <= N; ++i) {
    A.row(i) += (2.0 * (l + 1) / r(i)) * D1.row(i);
    A(i, i) -= w(i);
  }
  VectorXd rhs = h;

  // Series start at r0: m'(r0) = r0 (w m + h)(r0) / (2l + 3).
  const double r0 = r(0);
  A.row(0) = D1.row(0);
  A(0, 0) -= r0 * w(0) / (2 * l + 3);
  rhs(0) = r0 * h(0) / (2 * l + 3);

  // Dirichlet value at r = 1 (m(1) = u(1)).
  A.row(N).setZero();
  A(N, N) = 1.0;
  rhs(N) = bc;

  Eigen::PartialPivLU<MatrixXd> lu(A);
  ModalSolveResult out;
  out.m = lu.solve(rhs);
  out.residual = (A * out.m - rhs).cwiseAbs().maxCoeff();

  out.u.resize(N + 1);
  for (int i = 0; i <= N; ++i) out.u(i) = std::pow(r(i), l) * out.m(i);
  // u'(1) = l m(1) + m'(1) at r = 1.
  out.u_prime_1 = l * out.m(N) + D1.row(N).dot(out.m);
  return out;
}

ModalDirectSolver::ModalDirectSolver(std::shared_ptr<const ChebGrid> grid, int l,
                                     const VectorXd& w)
    : grid_(std::move(grid)), l_(l), w_(w) {
  const ChebGrid& g = *grid_;
  const int N = g.n();
  const VectorXd& r = g.nodes();
  const MatrixXd& D1 = g.d1();
  const MatrixXd& D2 = g.d2();

  op_rows_ = D2;
  for (int i = 0; i <= N; ++i) {
    op_rows_.row(i) += (2.0 / r(i)) * D1.row(i);
    op_rows_(i, i) -= l * (l + 1) / (r(i) * r(i)) + w_(i);
  }

  // Regularity row (r S' - l S)(r0) = 0, normalized so the diagonal is O(1).
  RowVectorXd reg = r(0) * D1.row(0);
  reg(0) -= l;
  const double piv = reg(0);
  if (std::abs(piv) < 1e-14)
    throw SolverError("modal solver: degenerate regularity row");
  recon_ = -reg.segment(1, N - 1) / piv;  // S(r0) in terms of nodes 1..N-1
  // (the r=1 column drops out of the condensed operator below because of the
  // Dirichlet condition; keep the full row for the factored solve)

  MatrixXd A(N + 1, N + 1);
  A.row(0) = reg;
  for (int i = 1; i < N; ++i) A.row(i) = r(i) * r(i) * op_rows_.row(i);
  A.row(N).setZero();
  A(N, N) = 1.0;
  lu_.compute(A);
}

VectorXd ModalDirectSolver::solve(const VectorXd& rhs, double bc) const {
  const ChebGrid& g = *grid_;
  const int N = g.n();
  VectorXd b(N + 1);
  b(0) = 0.0;
  for (int i = 1; i < N; ++i) b(i) = g.nodes()(i) * g.nodes()(i) * rhs(i);
  b(N) = bc;
  return lu_.solve(b);
}

MatrixXd ModalDirectSolver::condensed_operator() const {
  const int N = grid_->n();
  const int ni = N - 1;
  MatrixXd L(ni, ni);
  L = op_rows_.block(1, 1, ni, ni);
  // fold in the reconstructed r0 value; the r=1 column vanishes (phi(1) = 0)
  L += op_rows_.block(1, 0, ni, 1) * recon_;
  return L;
}

NutrientSolve solve_nutrient_bvp(const ChebGrid& grid, const std::function<double(double)>& F,
                                 const std::function<double(double)>& dF,
                                 const VectorXd* initial_guess, double tol, int max_iter) {
  const int N = grid.n();
  const VectorXd& r = grid.nodes();
  const MatrixXd& D1 = grid.d1();
  const MatrixXd& D2 = grid.d2();

  VectorXd sigma = initial_guess ? *initial_guess : VectorXd::Ones(N + 1);

  // interior rows in the self-adjoint weighting r^2 sigma'' + 2 r sigma' - r^2 F
  // so the system is well scaled near the origin; residuals are measured
  // relative to the magnitude of the terms being cancelled
  double scale = 1.0;    // magnitude of the terms being cancelled
  double rowsum = 1.0;   // |D| |sigma| row sums: differentiation roundoff scale
  const MatrixXd D1a = D1.cwiseAbs(), D2a = D2.cwiseAbs();
  auto assemble_residual = [&](const VectorXd& s) {
    VectorXd res(N + 1);
    VectorXd d1s = D1 * s;
    VectorXd d2s = D2 * s;
    VectorXd d1a = D1a * s.cwiseAbs();
    VectorXd d2a = D2a * s.cwiseAbs();
    res(0) = d1s(0) - r(0) * F(s(0)) / 3.0;
    double sc = 1.0, rs = 1.0;
    for (int i = 1; i < N; ++i) {
      const double t1 = r(i) * r(i) * d2s(i), t2 = 2.0 * r(i) * d1s(i),
                   t3 = r(i) * r(i) * F(s(i));
      res(i) = t1 + t2 - t3;
      sc = std::max(sc, std::abs(t1) + std::abs(t2) + std::abs(t3));
      rs = std::max(rs, r(i) * r(i) * d2a(i) + 2.0 * r(i) * d1a(i));
    }
    res(N) = s(N) - 1.0;
    scale = sc;
    rowsum = rs;
    return res;
  };
  VectorXd best = sigma;

  NutrientSolve out;
  VectorXd res = assemble_residual(sigma);
  double rn = res.cwiseAbs().maxCoeff();
  double best_rn = rn;
  out.residual_history.push_back(rn);

  for (int it = 0; it < max_iter; ++it) {
    if (rn <= tol * scale) break;
    MatrixXd J(N + 1, N + 1);
    J.row(0) = D1.row(0);
    J(0, 0) -= r(0) * dF(sigma(0)) / 3.0;
    for (int i = 1; i < N; ++i) {
      J.row(i) = r(i) * r(i) * D2.row(i) + (2.0 * r(i)) * D1.row(i);
      J(i, i) -= r(i) * r(i) * dF(sigma(i));
    }
    J.row(N).setZero();
    J(N, N) = 1.0;

    VectorXd step = J.partialPivLu().solve(-res);
    double damp = 1.0;
    VectorXd trial;
    double trial_rn = rn;
    for (int k = 0; k < 12; ++k) {
      trial = sigma + damp * step;
      trial_rn = assemble_residual(trial).cwiseAbs().maxCoeff();
      if (trial_rn < rn) break;
      damp *= 0.5;
    }
    const bool improved = trial_rn < rn;
    sigma = trial;
    res = assemble_residual(sigma);
    rn = res.cwiseAbs().maxCoeff();
    if (rn < best_rn) { best_rn = rn; best = sigma; }
    out.residual_history.push_back(rn);
    out.iterations = it + 1;
    if (!improved) break;  // stagnated at the roundoff floor
  }
  const double floor_tol = 64.0 * std::numeric_limits<double>::epsilon() * rowsum;
  if (best_rn > std::max(tol, 1e-8) * scale + floor_tol) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "nutrient BVP: Newton failed to converge (residual %.3e)",
                  best_rn);
    throw SolverError(msg);
  }

  out.sigma = best;
  out.sigma_prime_R = D1.row(N).dot(best);
  out.residual = best_rn / scale;  // relative collocation residual
  return out;
}

}  // namespace ts
