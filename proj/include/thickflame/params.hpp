#ifndef THICKFLAME_PARAMS_HPP
#define THICKFLAME_PARAMS_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "thickflame/errors.hpp"

namespace thickflame {

// Root of theta_i * r = 1 - exp(-r), the width of the reaction zone.
// Safeguarded Newton, bracketed: g(r) = theta_i * r - 1 + exp(-r) is smooth
// with g(0+) < 0, and the root sits near 1/theta_i when theta_i is small,
// so the upper end grows with 2/theta_i.
inline double solve_r(double theta_i) {
  if (!(theta_i > 0.0) || !(theta_i < 1.0))
    throw validation_error("solve_r: theta_i must lie in (0,1), got " +
                           std::to_string(theta_i));
  double lo = 1e-8, hi = std::max(50.0, 2.0 / theta_i);
  auto g = [theta_i](double r) { return theta_i * r - 1.0 + std::exp(-r); };
  double r = 1.0;
  for (int it = 0; it < 200; ++it) {
    double gr = g(r);
    if (gr > 0.0) hi = r; else lo = r;
    double dg = theta_i - std::exp(-r);
    double step = gr / dg;
    double next = r - step;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) < 1e-16 * (1.0 + std::abs(r)) && std::abs(gr) < 1e-13)
      return next;
    r = next;
  }
  return r;
}

// Transverse eigenvalue of mode k on the strip of width ell.
inline double lambda_k(double ell, int k) {
  if (!(ell > 0.0))
    throw validation_error("lambda_k: ell must be positive");
  const double two_pi_k = 2.0 * std::numbers::pi * static_cast<double>(k);
  return (two_pi_k / ell) * (two_pi_k / ell);
}

// Infinite-strip critical Lewis number R/(2 e^R - R - 2); lies in (0,1).
inline double le_zero(double r) {
  return r / (2.0 * std::exp(r) - r - 2.0);
}

// Model constants plus the derived reaction-zone width R and the domain
// geometry of the truncated computational strip [-A, B] x [-ell/2, ell/2].
struct Params {
  double theta_i = 0.75;  // ignition temperature, in (0,1)
  double le = 0.3;        // Lewis number
  double ell = 100.0;     // strip width
  double r = 0.0;         // reaction-zone width, root of theta_i R = 1 - e^{-R}
  double a_norm = 0.0;    // normalizing factor 1/R (unit wave speed)
  double delta = 0.0;     // mollifier half-plateau width, default R/8
  double a_ext = 10.0;    // left extent A
  double b_ext = 10.0;    // right extent B

  static Params make(double theta_i, double le, double ell,
                     double delta = -1.0, double a_ext = 10.0,
                     double b_ext = 10.0) {
    Params p;
    p.theta_i = theta_i;
    p.le = le;
    p.ell = ell;
    p.a_ext = a_ext;
    p.b_ext = b_ext;
    p.r = solve_r(theta_i);
    p.a_norm = 1.0 / p.r;
    p.delta = delta > 0.0 ? delta : p.r / 8.0;
    p.validate();
    return p;
  }

  void validate() const {
    if (!(le > 0.0)) throw validation_error("Params: le must be positive");
    if (!(ell > 0.0)) throw validation_error("Params: ell must be positive");
    if (!(2.0 * delta < r))
      throw validation_error(
          "Params: mollifier support 2*delta must fit inside (0, R)");
    if (!(a_ext > 2.0 * delta))
      throw validation_error("Params: a_ext must exceed 2*delta");
    if (!(b_ext > r + 2.0 * delta))
      throw validation_error("Params: b_ext must exceed R + 2*delta");
  }

  double lambda(int k) const { return lambda_k(ell, k); }
};

}  // namespace thickflame

#endif
