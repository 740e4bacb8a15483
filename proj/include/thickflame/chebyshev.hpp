#ifndef THICKFLAME_CHEBYSHEV_HPP
#define THICKFLAME_CHEBYSHEV_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "thickflame/errors.hpp"

namespace thickflame {

// Chebyshev-Gauss-Lobatto points cos(j pi / n), j = 0..n, decreasing from
// +1 to -1.
inline Eigen::VectorXd cgl_nodes(int n) {
  if (n < 2) throw validation_error("cgl_nodes: need n >= 2");
  Eigen::VectorXd x(n + 1);
  for (int j = 0; j <= n; ++j)
    x[j] = std::cos(j * std::numbers::pi / n);
  // pin the exact symmetric values
  x[0] = 1.0;
  x[n] = -1.0;
  if (n % 2 == 0) x[n / 2] = 0.0;
  return x;
}

// Collocation differentiation matrix d_ij = l_j^{(order)}(x_i) on the CGL
// points, built by the recursion on Lagrange-basis derivatives (not by
// squaring d1, which would amplify roundoff). Diagonal entries use the
// negative-sum trick.
inline Eigen::MatrixXd diff_matrix(int n, int order) {
  if (order < 1 || order > 4)
    throw validation_error("diff_matrix: order must be 1..4");
  const Eigen::VectorXd x = cgl_nodes(n);
  const int m = n + 1;
  Eigen::VectorXd c(m);
  for (int i = 0; i < m; ++i)
    c[i] = ((i == 0 || i == n) ? 2.0 : 1.0) * ((i % 2) ? -1.0 : 1.0);

  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(m, m);
  for (int ord = 1; ord <= order; ++ord) {
    Eigen::MatrixXd Dn(m, m);
    for (int i = 0; i < m; ++i) {
      double rowsum = 0.0;
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        const double v = ord * (c[i] / c[j] * D(i, i) - D(i, j)) / (x[i] - x[j]);
        Dn(i, j) = v;
        rowsum += v;
      }
      Dn(i, i) = -rowsum;
    }
    D = Dn;
  }
  return D;
}

// Barycentric weights for the CGL points (up to common scaling).
inline Eigen::VectorXd cgl_barycentric_weights(int n) {
  Eigen::VectorXd w(n + 1);
  for (int j = 0; j <= n; ++j) {
    w[j] = (j % 2) ? -1.0 : 1.0;
    if (j == 0 || j == n) w[j] *= 0.5;
  }
  return w;
}

// Evaluate the interpolant of values f at the CGL nodes x at point xe.
inline double barycentric_eval(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& w,
                               const Eigen::VectorXd& f, double xe) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < x.size(); ++j) {
    const double d = xe - x[j];
    if (d == 0.0) return f[j];
    const double t = w[j] / d;
    num += t * f[j];
    den += t;
  }
  return num / den;
}

}  // namespace thickflame

#endif
