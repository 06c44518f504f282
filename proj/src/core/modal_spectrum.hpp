// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/radial_ode.hpp"
#include "core/stationary.hpp"

namespace ts {

// Quasi-stationary (epsilon = 0) modal stability data on the unit ball.
//
// For each mode number l the slow eigenvalue is affine in the surface
// tension, alpha_l(gamma) = -K_l (gamma - gamma_l) with
//   K_l = l(l+2)(2l+1) / (4 (2l^2 + 4l + 3)),
// and gamma_l > 0 defined for l >= 2; alpha_1 = 0 (translations) and
// alpha_0 is gamma-independent.

/// Linearized nutrient response: (L_l - f'(sigma_s)) F_l = 0, F_l(1) = -sigma_s'(1).
ModalSolveResult solve_Fl(int l, const UnitStationaryState& st);

/// alpha_0 = g(1) + \int_0^1 g'(sigma_s) F_0 r^2 dr.
double alpha0(const UnitStationaryState& st);

/// Mode-l surface-tension threshold (l >= 2):
/// gamma_l = [4(2l+3)(l+1) / (l(l+2)(2l+1))] (g(1) + \int g'(sigma_s) F_l r^{l+2} dr).
double gamma_l(int l, const UnitStationaryState& st);

double K_l(int l);

/// Slow eigenvalue of mode l at surface tension gamma (any l >= 0).
double alpha_l(int l, double gamma, const UnitStationaryState& st);

struct SpectralSummary {
  double alpha0 = 0.0;
  double gamma_star = 0.0;   // max_l gamma_l
  int l_star = 2;
  int l_max = 64;
  std::vector<double> gammas;  // gammas[l] for l = 2..l_max (index l-2)
  bool tail_ok = false;        // tail decreasing over the last 8 modes and
                               // gamma_{l_max} < gamma_star / 10

  double gamma_of(int l) const { return gammas.at(l - 2); }
  /// Largest nontrivial slow eigenvalue at this gamma, over l = 0 and l >= 2.
  double alpha_star(double gamma, const UnitStationaryState& st) const;
};

/// When extend_until_tail is set, l_max is doubled (up to the cap) until the
/// tail bound holds; the summary reports the l_max actually used. The decay
/// gamma_l -> 0 has no a priori rate, so trust in gamma_star is evidence-based.
SpectralSummary spectral_summary(const UnitStationaryState& st, int l_max = 64,
                                 bool extend_until_tail = false, int l_cap = 512);

}  // namespace ts
