// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "core/chebyshev.hpp"

namespace ts {

// Radial collocation solvers for the modal operators
//   L_l u = u'' + (2/r) u' - l(l+1) u / r^2
// on [r0, 1], with regularity at the origin handled either by the
// substitution u = r^l m (well-scaled for any l) or by a Frobenius
// boundary row in the direct formulation.

/// Result of a linear modal solve.
struct ModalSolveResult {
  Eigen::VectorXd u;        // u(r) at grid nodes
  Eigen::VectorXd m;        // m = u / r^l (reduced variable), when applicable
  double u_prime_1 = 0.0;   // u'(1) from the spectral differentiation row
  double residual = 0.0;    // max abs residual of the assembled system
};

/// Solves (L_l - w) u = s with u(1) = bc via the reduced variable m = u/r^l:
///   m'' + (2(l+1)/r) m' - w m = h,   h = s / r^l  (pass h directly).
/// Inner boundary row is the two-term series start
///   m'(r0) = r0 (w m + h)(r0) / (2l + 3).
ModalSolveResult solve_modal_m(const ChebGrid& grid, int l, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& h, double bc);

/// Direct collocation for (L_l - w) S = rhs with S(1) = bc and the
/// regularity row (r S' - l S)(r0) = 0. Interior rows are r^2-weighted.
/// Factored once; solve() is cheap for repeated right-hand sides.
class ModalDirectSolver {
public:
  ModalDirectSolver(std::shared_ptr<const ChebGrid> grid, int l, const Eigen::VectorXd& w);

  /// rhs given at all nodes; the r0 and r=1 rows are replaced by the BCs.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double bc) const;

  int l() const { return l_; }
  const ChebGrid& grid() const { return *grid_; }

  /// Dense matrix of L_l - w restricted to nodes 1..N-1 (Dirichlet value 0 at
  /// r=1; the r0 value eliminated through the regularity row). Row/column
  /// order follows the grid: radial nodes ascending.
  Eigen::MatrixXd condensed_operator() const;

  /// Reconstruction coefficients: u(r0) = recon · u(interior nodes 1..N-1).
  Eigen::RowVectorXd inner_reconstruction() const { return recon_; }

private:
  std::shared_ptr<const ChebGrid> grid_;
  int l_;
  Eigen::VectorXd w_;
  Eigen::MatrixXd op_rows_;  // unweighted (L_l - w) rows at all nodes
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::RowVectorXd recon_;
};

/// Damped-Newton solve of the nonlinear nutrient BVP
///   sigma'' + (2/r) sigma' = F(sigma),  sigma(R) = 1,
/// on a grid over [r0, R], with the series start sigma'(r0) = r0 F(sigma)/3.
/// F and dF must be evaluable on the whole real line (callers wrap rate laws
/// with a linear extension so Newton iterates cannot step out of domain).
struct NutrientSolve {
  Eigen::VectorXd sigma;
  double sigma_prime_R = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;
};
NutrientSolve solve_nutrient_bvp(const ChebGrid& grid, const std::function<double(double)>& F,
                                 const std::function<double(double)>& dF,
                                 const Eigen::VectorXd* initial_guess = nullptr,
                                 double tol = 1e-12, int max_iter = 80);

}  // namespace ts
