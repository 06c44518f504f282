// SPDX-License-Identifier: Apache-2.0
#include "core/epsilon_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/stokes_ball.hpp"

namespace ts {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

VectorXd pi0_modal_kernel(int l, const UnitStationaryState& st) {
  const ChebGrid& g = *st.grid;
  VectorXd w(g.size());
  for (int i = 0; i < g.size(); ++i) w(i) = st.f.derivative(st.sigma(i));
  ModalDirectSolver solver(st.grid, l, w);
  return solver.solve(VectorXd::Zero(g.size()), 1.0);
}

EpsilonSpectrumSolver::EpsilonSpectrumSolver(UnitStationaryState st) : st_(std::move(st)) {}

const EpsilonSpectrumSolver::ModalData& EpsilonSpectrumSolver::modal_data(int l) {
  auto it = cache_.find(l);
  if (it != cache_.end()) return it->second;

  const ChebGrid& g = *st_.grid;
  const int N = g.n();
  const int ni = N - 1;

  VectorXd w(g.size());
  for (int i = 0; i < g.size(); ++i) w(i) = st_.f.derivative(st_.sigma(i));
  ModalDirectSolver direct(st_.grid, l, w);

  ModalData d;
  d.L = direct.condensed_operator();
  d.Fhat = pi0_modal_kernel(l, st_).segment(1, ni);

  // j row: boundary normal velocity of the zero-traction Stokes cell problem,
  // column by column through the factored solver
  ModalStokesSolver stokes(st_.grid, l);
  const RowVectorXd recon = direct.inner_reconstruction();
  d.j_row.resize(ni);
  VectorXd phi = VectorXd::Zero(g.size());
  for (int k = 0; k < ni; ++k) {
    phi.setZero();
    phi(k + 1) = 1.0;
    phi(0) = recon(k);
    d.j_row(k) = modal_J(stokes, st_, phi);
  }
  return cache_.emplace(l, std::move(d)).first->second;
}

double EpsilonSpectrumSolver::b_of(int l, double gamma) {
  auto key = std::make_pair(l, gamma);
  auto it = b_cache_.find(key);
  if (it != b_cache_.end()) return it->second;
  const double b = bgamma_via_stokes(l, gamma, st_);
  b_cache_.emplace(key, b);
  return b;
}

ModalBlockOperator EpsilonSpectrumSolver::assemble(int l, double epsilon, double gamma) {
  if (epsilon <= 0.0) throw DomainError("block operator requires epsilon > 0");
  const ModalData& d = modal_data(l);
  const int ni = int(d.L.rows());

  ModalBlockOperator op;
  op.l = l;
  op.epsilon = epsilon;
  op.gamma = gamma;
  op.L = d.L;
  op.j_row = d.j_row;
  op.Fhat = d.Fhat;
  op.sig1 = st_.sigma_prime_1;
  op.b_l = b_of(l, gamma);

  const VectorXd coupling = op.sig1 * d.Fhat;
  op.M.resize(ni + 1, ni + 1);
  op.M.topLeftCorner(ni, ni) = d.L / epsilon + coupling * d.j_row;
  op.M.topRightCorner(ni, 1) = coupling * op.b_l;
  op.M.bottomLeftCorner(1, ni) = d.j_row;
  op.M(ni, ni) = op.b_l;
  return op;
}

SlowBranch EpsilonSpectrumSolver::slow_branch(const ModalBlockOperator& op) const {
  const int ni = int(op.L.rows());
  const MatrixXd A = op.M.topLeftCorner(ni, ni);
  const VectorXd d = op.M.topRightCorner(ni, 1);

  // secular equation s(lambda) = b_l - lambda - j (A - lambda)^{-1} d = 0,
  // solved by a secant iteration seeded at the quasi-stationary eigenvalue
  auto secular = [&](double lam) {
    MatrixXd Ash = A;
    Ash.diagonal().array() -= lam;
    VectorXd x = Ash.partialPivLu().solve(d);
    return op.b_l - lam - op.j_row.dot(x);
  };

  const double scale = std::max(1.0, std::abs(op.b_l));
  double l0 = op.b_l, l1 = op.b_l + 1e-4 * scale;
  double s0 = secular(l0), s1 = secular(l1);
  SlowBranch out;
  for (int it = 0; it < 60; ++it) {
    if (s1 == s0) break;
    const double l2 = l1 - s1 * (l1 - l0) / (s1 - s0);
    l0 = l1; s0 = s1; l1 = l2; s1 = secular(l2);
    if (std::abs(l1 - l0) <= 1e-14 * std::max(1.0, std::abs(l1))) {
      out.refined = true;
      break;
    }
  }

  if (!out.refined || std::abs(s1) > 1e-6 * scale) {
    // fall back to the dense eigensolve: pick the eigenvalue whose eigenvector
    // is dominated by the c component
    Eigen::EigenSolver<MatrixXd> es(op.M);
    int best = 0;
    double best_ratio = -1.0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      const double c_mag = std::abs(es.eigenvectors()(ni, k));
      const double phi_mag = es.eigenvectors().col(k).head(ni).cwiseAbs().maxCoeff();
      const double ratio = c_mag / std::max(phi_mag, 1e-300);
      if (ratio > best_ratio) { best_ratio = ratio; best = k; }
    }
    l1 = es.eigenvalues()(best).real();
    out.refined = false;
  }

  out.lambda = l1;
  MatrixXd Ash = A;
  Ash.diagonal().array() -= l1;
  out.phi = -Ash.partialPivLu().solve(d);  // c = 1
  out.phi_c_ratio = out.phi.cwiseAbs().maxCoeff();
  return out;
}

EpsilonSpectrumReport EpsilonSpectrumSolver::spectrum(int l, double epsilon, double gamma) {
  ModalBlockOperator op = assemble(l, epsilon, gamma);
  EpsilonSpectrumReport rep;
  rep.l = l;
  rep.epsilon = epsilon;
  rep.gamma = gamma;

  Eigen::EigenSolver<MatrixXd> es(op.M);
  rep.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](auto a, auto b) { return a.real() > b.real(); });

  rep.slow = slow_branch(op);

  Eigen::EigenSolver<MatrixXd> ef(op.L);
  rep.dirichlet.resize(ef.eigenvalues().size());
  for (int k = 0; k < ef.eigenvalues().size(); ++k)
    rep.dirichlet[k] = ef.eigenvalues()(k).real() / epsilon;
  std::sort(rep.dirichlet.begin(), rep.dirichlet.end(), std::greater<>());

  rep.fast_max_re = rep.dirichlet.empty() ? 0.0 : rep.dirichlet.front();
  return rep;
}

bool EpsilonSpectrumSolver::stable_at(double eps, double gamma, double bound, int l_max) {
  for (int l = 0; l <= l_max; ++l) {
    ModalBlockOperator op = assemble(l, eps, gamma);
    Eigen::EigenSolver<MatrixXd> es(op.M);
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      const std::complex<double> lam = es.eigenvalues()(k);
      if (l == 1 && std::abs(lam) <= 1e-7 * std::max(1.0, std::abs(bound)))
        continue;  // rigid-translation zero
      if (lam.real() > bound) return false;
    }
  }
  return true;
}

ThresholdResult EpsilonSpectrumSolver::threshold(double gamma, const SpectralSummary& summary,
                                                 const ThresholdOptions& opts) {
  if (gamma <= summary.gamma_star)
    throw DomainError("epsilon threshold undefined below gamma_star");

  ThresholdResult res;
  res.l_max = opts.l_max;
  res.alpha_star = summary.alpha_star(gamma, st_);
  res.bound = 0.5 * res.alpha_star;

  const int np = opts.grid_points;
  res.eps_grid.resize(np);
  const double le0 = std::log(opts.eps_min), le1 = std::log(opts.eps_max);
  for (int k = 0; k < np; ++k) res.eps_grid[k] = std::exp(le0 + (le1 - le0) * k / (np - 1));

  int last_pass = -1;
  for (int k = 0; k < np; ++k) {
    if (!stable_at(res.eps_grid[k], gamma, res.bound, opts.l_max)) break;
    last_pass = k;
  }
  if (last_pass < 0) return res;  // found = false: even eps_min fails

  res.found = true;
  if (last_pass == np - 1) {
    res.epsilon0 = res.eps_grid.back();
    return res;
  }

  double lo = res.eps_grid[last_pass], hi = res.eps_grid[last_pass + 1];
  for (int it = 0; it < opts.bisect_iters; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (stable_at(mid, gamma, res.bound, opts.l_max)) lo = mid; else hi = mid;
  }
  res.epsilon0 = lo;
  return res;
}

}  // namespace ts
