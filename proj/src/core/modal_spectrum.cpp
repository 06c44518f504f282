// SPDX-License-Identifier: Apache-2.0
#include "core/modal_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace ts {

using Eigen::VectorXd;

ModalSolveResult solve_Fl(int l, const UnitStationaryState& st) {
  const ChebGrid& grid = *st.grid;
  VectorXd w(grid.size());
  for (int i = 0; i < grid.size(); ++i) w(i) = st.f.derivative(st.sigma(i));
  return solve_modal_m(grid, l, w, VectorXd::Zero(grid.size()), -st.sigma_prime_1);
}

double alpha0(const UnitStationaryState& st) {
  const ChebGrid& grid = *st.grid;
  ModalSolveResult F0 = solve_Fl(0, st);
  VectorXd integrand(grid.size());
  const VectorXd& r = grid.nodes();
  for (int i = 0; i < grid.size(); ++i)
    integrand(i) = st.g.derivative(st.sigma(i)) * F0.u(i) * r(i) * r(i);
  return st.g1() + grid.integrate(integrand);
}

double gamma_l(int l, const UnitStationaryState& st) {
  if (l < 2) throw DomainError("gamma_l defined for l >= 2");
  const ChebGrid& grid = *st.grid;
  ModalSolveResult Fl = solve_Fl(l, st);
  // r^{l+2} F_l = r^{2l+2} m_l keeps the integrand representable at any l
  VectorXd integrand(grid.size());
  const VectorXd& r = grid.nodes();
  for (int i = 0; i < grid.size(); ++i)
    integrand(i) = st.g.derivative(st.sigma(i)) * Fl.m(i) * std::pow(r(i), 2 * l + 2);
  const double I = grid.integrate(integrand);
  const double pref = 4.0 * (2 * l + 3) * (l + 1) / (double(l) * (l + 2) * (2 * l + 1));
  return pref * (st.g1() + I);
}

double K_l(int l) {
  return double(l) * (l + 2) * (2 * l + 1) / (4.0 * (2.0 * l * l + 4 * l + 3));
}

double alpha_l(int l, double gamma, const UnitStationaryState& st) {
  if (l == 0) return alpha0(st);
  if (l == 1) return 0.0;
  return -K_l(l) * (gamma - gamma_l(l, st));
}

double SpectralSummary::alpha_star(double gamma, const UnitStationaryState& st) const {
  double m = alpha0;
  for (int l = 2; l <= l_max; ++l) m = std::max(m, -K_l(l) * (gamma - gamma_of(l)));
  return m;
}

SpectralSummary spectral_summary(const UnitStationaryState& st, int l_max,
                                 bool extend_until_tail, int l_cap) {
  SpectralSummary s;
  s.l_max = l_max;
  s.alpha0 = alpha0(st);
  s.gammas.reserve(l_max - 1);
  for (int l = 2; l <= l_max; ++l) s.gammas.push_back(gamma_l(l, st));
  auto it = std::max_element(s.gammas.begin(), s.gammas.end());
  s.gamma_star = *it;
  s.l_star = 2 + int(it - s.gammas.begin());

  bool decreasing = l_max >= 10;
  for (int l = std::max(2, l_max - 8); l < l_max; ++l)
    if (s.gamma_of(l + 1) >= s.gamma_of(l)) decreasing = false;
  s.tail_ok = decreasing && s.gamma_of(l_max) < s.gamma_star / 10.0;

  if (!s.tail_ok && extend_until_tail && 2 * l_max <= l_cap)
    return spectral_summary(st, 2 * l_max, true, l_cap);
  return s;
}

}  // namespace ts
