// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "core/modal_spectrum.hpp"
#include "core/stationary.hpp"

namespace ts {

// Per-mode block operator for the epsilon-perturbed linearization. In the
// homogenized variables (phi, c) with phi(1) = 0,
//   d/dt phi = eps^{-1} (Delta_l - f'(sigma_s)) phi
//              + sigma_s'(1) Fhat_l ( j_l[phi] + b_l(gamma) c ),
//   d/dt c   = j_l[phi] + b_l(gamma) c,
// where Fhat_l is the normalized quasi-static nutrient kernel (Fhat(1) = 1),
// j_l the boundary normal velocity response of the zero-traction Stokes cell
// problem, and b_l(gamma) the quasi-stationary slow eigenvalue. As eps -> 0
// the c-equation decouples and the slow branch tends to alpha_l(gamma); the
// remaining spectrum scales like eps^{-1} (nutrient relaxation).

/// Normalized kernel: (Delta_l - f'(sigma_s)) Fhat = 0, Fhat(1) = 1.
Eigen::VectorXd pi0_modal_kernel(int l, const UnitStationaryState& st);

struct ModalBlockOperator {
  int l = 0;
  double epsilon = 0.0, gamma = 0.0;
  Eigen::MatrixXd M;        // (ni+1) x (ni+1); last index is the c component
  Eigen::MatrixXd L;        // condensed (Delta_l - f'), ni x ni
  Eigen::RowVectorXd j_row; // j_l over interior dofs
  Eigen::VectorXd Fhat;     // interior kernel values
  double sig1 = 0.0;        // sigma_s'(1)
  double b_l = 0.0;
};

struct SlowBranch {
  double lambda = 0.0;
  Eigen::VectorXd phi;       // eigenvector phi-part, c normalized to 1
  double phi_c_ratio = 0.0;  // ||phi||_inf / |c|
  bool refined = false;      // secular refinement converged
};

struct EpsilonSpectrumReport {
  int l = 0;
  double epsilon = 0.0, gamma = 0.0;
  std::vector<std::complex<double>> eigenvalues;  // full block spectrum, Re desc
  SlowBranch slow;
  std::vector<double> dirichlet;  // eigenvalues of eps^{-1} (Delta_l - f') alone
  double fast_max_re = 0.0;
};

struct ThresholdOptions {
  int l_max = 12;
  double eps_min = 1e-6, eps_max = 1.0;
  int grid_points = 40;
  int bisect_iters = 30;
};

struct ThresholdResult {
  bool found = false;
  double epsilon0 = 0.0;
  double alpha_star = 0.0;  // max of the quasi-stationary multipliers at gamma
  double bound = 0.0;       // alpha_star / 2, the required eigenvalue bound
  int l_max = 12;
  std::vector<double> eps_grid;
};

/// Caches the eps/gamma-independent per-mode data (condensed operator, j
/// row, kernel) and the per-(l, gamma) slow eigenvalue.
class EpsilonSpectrumSolver {
public:
  explicit EpsilonSpectrumSolver(UnitStationaryState st);

  const UnitStationaryState& state() const { return st_; }

  ModalBlockOperator assemble(int l, double epsilon, double gamma);
  SlowBranch slow_branch(const ModalBlockOperator& op) const;
  EpsilonSpectrumReport spectrum(int l, double epsilon, double gamma);

  /// Largest epsilon on a geometric grid (refined by bisection) such that for
  /// all l <= l_max every eigenvalue except the l = 1 rigid zeros has real
  /// part <= alpha_star/2. Requires gamma > gamma_star.
  ThresholdResult threshold(double gamma, const SpectralSummary& summary,
                            const ThresholdOptions& opts = {});

private:
  struct ModalData {
    Eigen::MatrixXd L;
    Eigen::RowVectorXd j_row;
    Eigen::VectorXd Fhat;
  };
  const ModalData& modal_data(int l);
  double b_of(int l, double gamma);
  bool stable_at(double eps, double gamma, double bound, int l_max);

  UnitStationaryState st_;
  std::map<int, ModalData> cache_;
  std::map<std::pair<int, double>, double> b_cache_;
};

}  // namespace ts
