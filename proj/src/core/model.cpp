// SPDX-License-Identifier: Apache-2.0
#include "core/model.hpp"

#include <cmath>

namespace ts {

namespace {

bool strictly_positive_derivative(const RateFunction& r, double lo, double hi) {
  const int samples = 1000;
  for (int i = 0; i < samples; ++i) {
    double s = lo + (hi - lo) * i / (samples - 1);
    if (!(r.derivative(s) > 0.0)) return false;
  }
  return true;
}

}  // namespace

AssumptionReport validate_assumptions(const RateFunction& f, const RateFunction& g,
                                      double sigma_bar) {
  AssumptionReport rep;
  const double smax_f = f.sigma_max();
  const double smax_g = g.sigma_max();

  rep.a1_monotone_f = strictly_positive_derivative(f, 0.0, smax_f) &&
                      std::abs(f.eval(0.0)) <= 1e-12;
  if (!rep.a1_monotone_f) rep.detail += "A1 failed (need f'>0 on [0,sigma_max] and f(0)=0); ";

  bool g_monotone = strictly_positive_derivative(g, 0.0, smax_g);
  // g monotone increasing: a root in (0, sigma_bar] exists iff g(0) < 0 < g(sigma_bar).
  double g0 = g.eval(0.0);
  double gb = g.eval(sigma_bar);
  bool bracketed = g0 < 0.0 && gb > 0.0;
  rep.a2_monotone_g_root = g_monotone && g0 < 0.0;
  if (!rep.a2_monotone_g_root) rep.detail += "A2 failed (need g'>0 and g(0)<0 so a positive root exists); ";

  if (g_monotone && bracketed) {
    double lo = 0.0, hi = sigma_bar;
    while (hi - lo > 1e-16) {
      double mid = 0.5 * (lo + hi);
      (g.eval(mid) < 0.0 ? lo : hi) = mid;
      if (std::abs(g.eval(mid)) <= 1e-13) {
        lo = hi = mid;
        break;
      }
    }
    double root = 0.5 * (lo + hi);
    rep.sigma_tilde = root;
    rep.a3_root_below_bar = root < sigma_bar;
  } else if (g_monotone && g0 < 0.0 && !(gb > 0.0)) {
    // root exists beyond sigma_bar (or nowhere in range): A3 violated
    rep.a3_root_below_bar = false;
    rep.detail += "A3 failed (sigma_tilde >= sigma_bar); ";
  }

  return rep;
}

}  // namespace ts
