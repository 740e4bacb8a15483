#ifndef THICKFLAME_EIGENMODE_HPP
#define THICKFLAME_EIGENMODE_HPP

#include <cmath>

#include "thickflame/dispersion.hpp"
#include "thickflame/errors.hpp"
#include "thickflame/grid.hpp"
#include "thickflame/params.hpp"
#include "thickflame/state.hpp"

namespace thickflame {

// Explicit eigenfunction of the linearized operator for transverse mode k
// at a Lewis number below critical: piecewise exponentials whose exponents
// are nu+- = (-1 +- X_k)/2 and mu+- = (-Le +- Y_k)/2 evaluated at the growth
// rate, with coefficients fixed by the seven interface relations and the
// normalization u(0) = 1 on the left piece.
struct EigenMode {
  int k = 1;
  double le = 0.0;
  double tilde_lambda = 0.0;  // growth rate
  double x1 = 0.0, y1 = 0.0;
  double nu_plus = 0.0, nu_minus = 0.0, mu_plus = 0.0, mu_minus = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
  double r = 0.0;

  // One-sided evaluation per subdomain; w jumps at xi = R (the interface
  // relations carry Le [u_x]_R + [w]_R = 0), so each subdomain samples its
  // own analytic piece.
  double u_piece(int piece, double xi) const {
    switch (piece) {
      case 1: return std::exp(nu_plus * xi);
      case 2: return c1 * std::exp(nu_minus * xi) + c2 * std::exp(nu_plus * xi);
      default: return c3 * std::exp(nu_minus * xi);
    }
  }

  double w_piece(int piece, double xi) const {
    switch (piece) {
      case 1: return 0.0;
      case 2: return d1 * std::exp(mu_minus * xi) + d2 * std::exp(mu_plus * xi);
      default: return d3 * std::exp(mu_minus * xi);
    }
  }

  double u_profile(double xi) const {
    return u_piece(xi <= 0.0 ? 1 : (xi < r ? 2 : 3), xi);
  }

  double w_profile(double xi) const {
    return w_piece(xi < 0.0 ? 1 : (xi < r ? 2 : 3), xi);
  }

  double w_trace_zero() const { return d1 + d2; }
};

inline EigenMode eigenmode_build(const Params& p, int k = 1) {
  EigenMode m;
  m.k = k;
  m.le = p.le;
  m.r = p.r;
  m.tilde_lambda = growth_root(p.le, k, p);
  const double lamk = p.lambda(k);
  m.x1 = std::sqrt(1.0 + 4.0 * m.tilde_lambda + 4.0 * lamk);
  m.y1 = std::sqrt(p.le * p.le + 4.0 * m.tilde_lambda * p.le + 4.0 * lamk);
  m.nu_plus = 0.5 * (-1.0 + m.x1);
  m.nu_minus = 0.5 * (-1.0 - m.x1);
  m.mu_plus = 0.5 * (-p.le + m.y1);
  m.mu_minus = 0.5 * (-p.le - m.y1);

  const double r = p.r;
  const double den = std::exp(m.mu_plus * r) - std::exp(m.nu_plus * r);
  if (std::abs(den) < 1e-14)
    throw numerical_error("eigenmode_build: degenerate denominator e^{mu+ R} - e^{nu+ R}");
  m.c1 = std::exp((m.x1 + m.mu_plus) * r) * (p.theta_i * r * m.x1 - 1.0) / den;
  m.c2 = std::exp(m.mu_plus * r) / den;
  m.c3 = p.theta_i * r * std::exp((m.x1 + m.mu_plus) * r) * m.x1 / den;
  m.d1 = -p.le * (p.le + m.mu_plus) * std::exp(m.nu_plus * r) * m.x1 / (den * m.y1);
  m.d2 = -(p.le + m.mu_minus) * m.d1 / (p.le + m.mu_plus);
  m.d3 = (1.0 - std::exp(m.y1 * r)) * m.d1;
  return m;
}

// Samples the eigenfunction on the grid as a real state,
// field = amplitude * 2 Re(profile(xi) e^{i k (y - y0)}).
inline State eigenmode_sample(const EigenMode& m, const Grid& g,
                              double amplitude = 1.0, double y0 = 0.0) {
  State s = State::zero(g);
  const int n = g.n_x;
  for (int j = 0; j < g.n_y; ++j) {
    const double cy = 2.0 * std::cos(m.k * (g.y_node(j) - y0));
    for (int i = 0; i <= n; ++i) {
      s.u1(i, j) = amplitude * cy * m.u_piece(1, g.xi_node(1, i));
      s.u2(i, j) = amplitude * cy * m.u_piece(2, g.xi_node(2, i));
      s.u3(i, j) = amplitude * cy * m.u_piece(3, g.xi_node(3, i));
      s.w2(i, j) = amplitude * cy * m.w_piece(2, g.xi_node(2, i));
      s.w3(i, j) = amplitude * cy * m.w_piece(3, g.xi_node(3, i));
    }
  }
  return s;
}

}  // namespace thickflame

#endif
