// SPDX-License-Identifier: Apache-2.0
#include "core/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace ts {

ChebGrid::ChebGrid(int n, double a, double b) : n_(n), a_(a), b_(b) {
  if (n < 2) throw std::invalid_argument("ChebGrid: need n >= 2");
  if (!(b > a)) throw std::invalid_argument("ChebGrid: need b > a");
  const int m = n + 1;
  const double pi = std::acos(-1.0);

  // Standard nodes x_j = cos(pi j / n) descending; map and flip to ascending.
  Eigen::VectorXd x(m);
  for (int j = 0; j <= n; ++j) x[j] = std::cos(pi * j / n);

  // Differentiation matrix on [-1,1] with the negative-sum trick for the
  // diagonal (reduces roundoff for clustered nodes).
  Eigen::VectorXd c(m);
  for (int j = 0; j <= n; ++j) c[j] = (j == 0 || j == n) ? 2.0 : 1.0;
  Eigen::MatrixXd D(m, m);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i != j) {
        double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        D(i, j) = (c[i] / c[j]) * sign / (x[i] - x[j]);
      }
    }
  }
  for (int i = 0; i <= n; ++i) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
      if (j != i) s += D(i, j);
    D(i, i) = -s;
  }

  // Clenshaw–Curtis weights on [-1,1] (standard cosine-sum form).
  Eigen::VectorXd w(m);
  for (int j = 0; j <= n; ++j) {
    double theta = pi * j / n;
    double s = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
      double bk = (2 * k == n) ? 1.0 : 2.0;
      s += bk * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    }
    double cj = (j == 0 || j == n) ? 1.0 : 2.0;
    w[j] = (cj / n) * (1.0 - s);
  }

  // Map to [a,b] and reorder ascending (reverse index).
  const double half = 0.5 * (b - a);
  nodes_.resize(m);
  w_.resize(m);
  Eigen::MatrixXd D1(m, m);
  for (int i = 0; i <= n; ++i) {
    nodes_[i] = a + half * (1.0 + x[n - i]);
    w_[i] = half * w[n - i];
    for (int j = 0; j <= n; ++j) D1(i, j) = D(n - i, n - j) / half;
  }
  nodes_[0] = a;
  nodes_[n] = b;
  d1_ = D1;
  d2_ = D1 * D1;

  // Barycentric weights for the Lobatto nodes (ascending order).
  barywts_.resize(m);
  for (int j = 0; j <= n; ++j) {
    double wj = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n) wj *= 0.5;
    barywts_[j] = wj;
  }
}

double ChebGrid::interpolate(const Eigen::VectorXd& values, double x) const {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < size(); ++j) {
    double dx = x - nodes_[j];
    if (dx == 0.0) return values[j];
    double t = barywts_[j] / dx;
    num += t * values[j];
    den += t;
  }
  return num / den;
}

}  // namespace ts
