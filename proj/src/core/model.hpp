// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "core/rate_function.hpp"

namespace ts {

/// Global model parameters. The exterior nutrient level and the viscosity
/// are normalized to 1; sigma_tilde (the zero of g) is derived.
struct ModelParams {
  double epsilon = 0.01;    // nutrient time-scale ratio, >= 0
  double gamma = 1.0;       // surface tension, > 0
  double sigma_bar = 1.0;   // fixed
  double nu = 1.0;          // fixed
};

struct AssumptionReport {
  bool a1_monotone_f = false;     // f' > 0 on [0, sigma_max], f(0) = 0
  bool a2_monotone_g_root = false;// g' > 0 and g has a root sigma_tilde > 0
  bool a3_root_below_bar = false; // sigma_tilde < sigma_bar
  std::optional<double> sigma_tilde;
  std::string detail;

  bool pass() const { return a1_monotone_f && a2_monotone_g_root && a3_root_below_bar; }
};

/// Checks (A1)–(A3) by dense sampling of f', g' on a 1000-point grid of
/// [0, sigma_max] and locates sigma_tilde by bisection, |g| <= 1e-12.
AssumptionReport validate_assumptions(const RateFunction& f, const RateFunction& g,
                                      double sigma_bar = 1.0);

}  // namespace ts
