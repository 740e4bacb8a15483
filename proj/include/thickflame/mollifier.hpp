#ifndef THICKFLAME_MOLLIFIER_HPP
#define THICKFLAME_MOLLIFIER_HPP

#include "thickflame/errors.hpp"

namespace thickflame {

// Trapezoid cutoff: 1 on [-delta, delta], affine ramps on (-2delta,-delta)
// and (delta, 2delta), 0 outside. The derivative is taken in the piecewise
// sense with right limits at the kink points.
struct Mollifier {
  double delta = 0.0;

  explicit Mollifier(double d) : delta(d) {
    if (!(d > 0.0)) throw validation_error("Mollifier: delta must be positive");
  }

  double beta(double xi) const {
    if (xi <= -2.0 * delta || xi >= 2.0 * delta) return 0.0;
    if (xi < -delta) return 2.0 + xi / delta;
    if (xi <= delta) return 1.0;
    return 2.0 - xi / delta;
  }

  // right-limit slope
  double beta_prime(double xi) const {
    if (xi < -2.0 * delta || xi >= 2.0 * delta) return 0.0;
    if (xi < -delta) return 1.0 / delta;
    if (xi < delta) return 0.0;
    return -1.0 / delta;
  }

  bool in_support(double xi) const {
    return xi > -2.0 * delta && xi < 2.0 * delta;
  }
};

}  // namespace thickflame

#endif
