#ifndef THICKFLAME_TRAVELING_WAVE_HPP
#define THICKFLAME_TRAVELING_WAVE_HPP

#include <cmath>
#include <utility>

#include "thickflame/errors.hpp"
#include "thickflame/params.hpp"

namespace thickflame {

enum class Side { automatic, left, right };

// Planar traveling-wave pair (Theta0, Phi0) in the co-moving frame, with
// analytic x-derivatives up to fourth order on the three pieces
// (-inf,0], (0,R), [R,+inf). Second and higher derivatives jump at 0 and R;
// those points require an explicit side.
class WaveProfile {
public:
  explicit WaveProfile(const Params& p) : p_(p) {}

  double theta0(double x) const {
    const double r = p_.r;
    if (x <= 0.0) return 1.0;
    if (x < r) return 1.0 + (1.0 - x - std::exp(-x)) / r;
    return p_.theta_i * std::exp(r - x);
  }

  double phi0(double x) const {
    const double r = p_.r, le = p_.le;
    if (x <= 0.0) return 0.0;
    // expm1 keeps (e^{-Le x} - 1)/(Le R) accurate for small Le*x.
    if (x < r) return std::expm1(-le * x) / (le * r) + x / r;
    return 1.0 + (1.0 - std::exp(le * r)) / (le * r) * std::exp(-le * x);
  }

  // d^n Theta0 / dx^n, n in 1..4.
  double theta_deriv(double x, int order, Side side = Side::automatic) const {
    const int piece = resolve_piece(x, order, side);
    const double r = p_.r;
    switch (piece) {
      case 0:
        return 0.0;
      case 1: {
        const double e = std::exp(-x);
        switch (order) {
          case 1: return (-1.0 + e) / r;
          case 2: return -e / r;
          case 3: return e / r;
          default: return -e / r;
        }
      }
      default: {
        const double v = p_.theta_i * std::exp(r - x);
        return (order % 2 == 0) ? v : -v;
      }
    }
  }

  // d^n Phi0 / dx^n, n in 1..4.
  double phi_deriv(double x, int order, Side side = Side::automatic) const {
    const int piece = resolve_piece(x, order, side);
    const double r = p_.r, le = p_.le;
    switch (piece) {
      case 0:
        return 0.0;
      case 1: {
        const double e = std::exp(-le * x);
        switch (order) {
          case 1: return (1.0 - e) / r;
          case 2: return le * e / r;
          case 3: return -le * le * e / r;
          default: return le * le * le * e / r;
        }
      }
      default: {
        const double c = (1.0 - std::exp(le * r)) / (le * r);
        double v = c * std::exp(-le * x);
        for (int i = 0; i < order; ++i) v *= -le;
        return v;
      }
    }
  }

  std::pair<double, double> wave_derivatives(double x, int order,
                                             Side side = Side::automatic) const {
    return {theta_deriv(x, order, side), phi_deriv(x, order, side)};
  }

  const Params& params() const { return p_; }

private:
  // 0: x <= 0, 1: (0,R), 2: x >= R. First derivatives are continuous, so
  // Side::automatic picks the middle branch at the interfaces for order 1.
  int resolve_piece(double x, int order, Side side) const {
    if (order < 1 || order > 4)
      throw validation_error("wave derivatives: order must be 1..4");
    const double r = p_.r;
    const bool at_zero = x == 0.0, at_r = x == r;
    if ((at_zero || at_r) && order >= 2 && side == Side::automatic)
      throw validation_error(
          "wave derivatives jump at the interfaces; pass an explicit side");
    if (at_zero) return side == Side::left ? 0 : 1;
    if (at_r) return side == Side::left ? 1 : 2;
    if (x < 0.0) return 0;
    return x < r ? 1 : 2;
  }

  Params p_;
};

}  // namespace thickflame

#endif
