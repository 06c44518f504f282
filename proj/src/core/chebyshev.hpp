// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace ts {

/// Chebyshev–Lobatto collocation grid on [a, b], nodes stored ascending
/// (nodes[0] == a, nodes[n] == b). Provides spectral differentiation
/// matrices and Clenshaw–Curtis quadrature weights on the same nodes.
class ChebGrid {
public:
  ChebGrid(int n, double a, double b);

  int n() const { return n_; }              // polynomial degree; n+1 nodes
  int size() const { return n_ + 1; }
  double a() const { return a_; }
  double b() const { return b_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::MatrixXd& d1() const { return d1_; }
  const Eigen::MatrixXd& d2() const { return d2_; }
  const Eigen::VectorXd& weights() const { return w_; }  // Clenshaw–Curtis

  double integrate(const Eigen::VectorXd& values) const { return w_.dot(values); }

  /// Barycentric interpolation of nodal values at an arbitrary point in [a,b].
  double interpolate(const Eigen::VectorXd& values, double x) const;

private:
  int n_;
  double a_, b_;
  Eigen::VectorXd nodes_;
  Eigen::MatrixXd d1_, d2_;
  Eigen::VectorXd w_;
  Eigen::VectorXd barywts_;
};

}  // namespace ts
