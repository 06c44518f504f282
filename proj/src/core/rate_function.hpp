// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace ts {

enum class RateFamily { Linear, Polynomial, TabulatedSpline };

/// Scalar rate law (nutrient consumption f or proliferation g) with an
/// evaluable first derivative.
///
/// linear:            c0 * (sigma - c1)           (c1 optional, default 0)
/// polynomial:        c0*sigma + c1*sigma^2 + ... (no constant term)
/// tabulated-spline:  natural cubic spline through (x_i, y_i)
class RateFunction {
public:
  RateFunction() : params_{1.0, 0.0} {}  // identity-slope placeholder

  static RateFunction linear(double slope, double root = 0.0);
  static RateFunction polynomial(std::vector<double> coeffs);
  static RateFunction spline(std::vector<double> x, std::vector<double> y);
  static RateFunction make(const std::string& family, const std::vector<double>& coeffs);

  double operator()(double sigma) const { return eval(sigma); }
  double eval(double sigma) const;
  double derivative(double sigma) const;

  /// Rate law scaled by a constant factor s (both value and derivative).
  /// Used when rescaling the stationary problem to the unit ball.
  RateFunction scaled(double s) const;

  RateFamily family() const { return family_; }
  double sigma_max() const { return sigma_max_; }
  const std::vector<double>& params() const { return params_; }

private:
  void check_domain(double sigma) const;

  RateFamily family_ = RateFamily::Linear;
  std::vector<double> params_;
  double scale_ = 1.0;
  double sigma_max_ = 2.0;

  // spline data
  std::vector<double> sx_, sy_, sm_;  // abscissae, values, second derivatives
};

}  // namespace ts
