// SPDX-License-Identifier: Apache-2.0
#include "core/rate_function.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace ts {

RateFunction RateFunction::linear(double slope, double root) {
  RateFunction r;
  r.family_ = RateFamily::Linear;
  r.params_ = {slope, root};
  return r;
}

RateFunction RateFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ConfigError("polynomial rate law needs at least one coefficient");
  RateFunction r;
  r.family_ = RateFamily::Polynomial;
  r.params_ = std::move(coeffs);
  return r;
}

RateFunction RateFunction::spline(std::vector<double> x, std::vector<double> y) {
  if (x.size() < 3 || x.size() != y.size())
    throw ConfigError("spline rate law needs >= 3 (x, y) pairs of equal length");
  for (size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw ConfigError("spline rate law: abscissae must be strictly increasing");

  RateFunction r;
  r.family_ = RateFamily::TabulatedSpline;
  r.sx_ = std::move(x);
  r.sy_ = std::move(y);
  r.sigma_max_ = r.sx_.back();

  // Natural cubic spline second derivatives (tridiagonal solve).
  const int n = static_cast<int>(r.sx_.size());
  std::vector<double> u(n, 0.0);
  r.sm_.assign(n, 0.0);
  for (int i = 1; i < n - 1; ++i) {
    double sig = (r.sx_[i] - r.sx_[i - 1]) / (r.sx_[i + 1] - r.sx_[i - 1]);
    double p = sig * r.sm_[i - 1] + 2.0;
    r.sm_[i] = (sig - 1.0) / p;
    double d = (r.sy_[i + 1] - r.sy_[i]) / (r.sx_[i + 1] - r.sx_[i]) -
               (r.sy_[i] - r.sy_[i - 1]) / (r.sx_[i] - r.sx_[i - 1]);
    u[i] = (6.0 * d / (r.sx_[i + 1] - r.sx_[i - 1]) - sig * u[i - 1]) / p;
  }
  for (int i = n - 2; i >= 0; --i) r.sm_[i] = r.sm_[i] * r.sm_[i + 1] + u[i];
  return r;
}

RateFunction RateFunction::make(const std::string& family, const std::vector<double>& coeffs) {
  if (family == "linear") {
    if (coeffs.empty()) throw ConfigError("linear rate law needs [slope] or [slope, root]");
    return linear(coeffs[0], coeffs.size() > 1 ? coeffs[1] : 0.0);
  }
  if (family == "polynomial") return polynomial(coeffs);
  if (family == "tabulated-spline") {
    if (coeffs.size() < 6 || coeffs.size() % 2 != 0)
      throw ConfigError("tabulated-spline wants flattened [x0,y0,x1,y1,...], >= 3 pairs");
    std::vector<double> x, y;
    for (size_t i = 0; i < coeffs.size(); i += 2) {
      x.push_back(coeffs[i]);
      y.push_back(coeffs[i + 1]);
    }
    return spline(std::move(x), std::move(y));
  }
  throw ConfigError("unknown rate-law family '" + family + "'");
}

void RateFunction::check_domain(double sigma) const {
  if (!(sigma >= 0.0 && sigma <= sigma_max_))
    throw DomainError("rate law evaluated outside [0, sigma_max]");
}

double RateFunction::eval(double sigma) const {
  check_domain(sigma);
  switch (family_) {
    case RateFamily::Linear:
      return scale_ * params_[0] * (sigma - params_[1]);
    case RateFamily::Polynomial: {
      double v = 0.0;
      for (size_t k = params_.size(); k-- > 0;) v = v * sigma + params_[k];
      return scale_ * v * sigma;
    }
    case RateFamily::TabulatedSpline: {
      auto it = std::upper_bound(sx_.begin(), sx_.end(), sigma);
      int hi = std::clamp<int>(static_cast<int>(it - sx_.begin()), 1, static_cast<int>(sx_.size()) - 1);
      int lo = hi - 1;
      double h = sx_[hi] - sx_[lo];
      double a = (sx_[hi] - sigma) / h, b = (sigma - sx_[lo]) / h;
      double v = a * sy_[lo] + b * sy_[hi] +
                 ((a * a * a - a) * sm_[lo] + (b * b * b - b) * sm_[hi]) * h * h / 6.0;
      return scale_ * v;
    }
  }
  return 0.0;
}

double RateFunction::derivative(double sigma) const {
  check_domain(sigma);
  switch (family_) {
    case RateFamily::Linear:
      return scale_ * params_[0];
    case RateFamily::Polynomial: {
      // d/ds [sum_k c_k s^{k+1}] = sum_k (k+1) c_k s^k
      double v = 0.0;
      for (size_t k = params_.size(); k-- > 0;) v = v * sigma + (k + 1) * params_[k];
      return scale_ * v;
    }
    case RateFamily::TabulatedSpline: {
      auto it = std::upper_bound(sx_.begin(), sx_.end(), sigma);
      int hi = std::clamp<int>(static_cast<int>(it - sx_.begin()), 1, static_cast<int>(sx_.size()) - 1);
      int lo = hi - 1;
      double h = sx_[hi] - sx_[lo];
      double a = (sx_[hi] - sigma) / h, b = (sigma - sx_[lo]) / h;
      double v = (sy_[hi] - sy_[lo]) / h +
                 ((3.0 * b * b - 1.0) * sm_[hi] - (3.0 * a * a - 1.0) * sm_[lo]) * h / 6.0;
      return scale_ * v;
    }
  }
  return 0.0;
}

RateFunction RateFunction::scaled(double s) const {
  RateFunction r = *this;
  r.scale_ *= s;
  return r;
}

}  // namespace ts
