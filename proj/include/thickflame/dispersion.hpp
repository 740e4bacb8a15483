#ifndef THICKFLAME_DISPERSION_HPP
#define THICKFLAME_DISPERSION_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "thickflame/errors.hpp"
#include "thickflame/params.hpp"

namespace thickflame {

using complexd = std::complex<double>;

// Square-root symbols of transverse mode k. Principal branch, Re >= 0.
struct ModeConstants {
  int k = 0;
  double lambda_k = 0.0;
  complexd x_k;  // sqrt(1 + 4 lambda + 4 lambda_k)
  complexd y_k;  // sqrt(Le^2 + 4 lambda Le + 4 lambda_k)

  static ModeConstants at(int k, complexd lambda, double le, const Params& p) {
    ModeConstants m;
    m.k = k;
    m.lambda_k = p.lambda(k);
    m.x_k = std::sqrt(complexd(1.0, 0.0) + 4.0 * lambda + 4.0 * m.lambda_k);
    m.y_k = std::sqrt(complexd(le * le, 0.0) + 4.0 * lambda * le + 4.0 * m.lambda_k);
    return m;
  }
};

// Reduced dispersion relation: its roots lambda with positive real part are
// growth rates of transverse mode k.
inline complexd reduced_dispersion(int k, complexd lambda, double le,
                                   const Params& p) {
  const auto m = ModeConstants::at(k, lambda, le, p);
  const double r = p.r;
  return std::exp(0.5 * r * (le - 1.0 - m.x_k - m.y_k)) - 1.0 +
         p.theta_i * r * m.x_k;
}

// Full dispersion relation D_k = (Le - Y_k) * D_{0,k}.
inline complexd full_dispersion(int k, complexd lambda, double le,
                                const Params& p) {
  const auto m = ModeConstants::at(k, lambda, le, p);
  return (le - m.y_k) * reduced_dispersion(k, lambda, le, p);
}

// Companion relation with both exponential branches; vanishes with X_k.
inline complexd tilde_dispersion(int k, complexd lambda, double le,
                                 const Params& p) {
  const auto m = ModeConstants::at(k, lambda, le, p);
  const double r = p.r;
  const complexd bracket =
      std::exp(0.5 * r * (le - 1.0 - m.x_k - m.y_k)) -
      std::exp(0.5 * r * (le - 1.0 + m.x_k - m.y_k)) + p.theta_i * r * m.x_k;
  return (le - m.y_k) * bracket;
}

// Closed form for the Lewis number where mode k's growth rate crosses zero.
// Derived from D_{0,k}(0, Le) = 0:
//   Y_k(0, Le) = Le - 1 - X_k(0) - (2/R) log(1 - theta_i R X_k(0)),
// squared and solved for Le. Requires 1 - theta_i R X_k(0) > 0.
inline double le_critical(int k, const Params& p) {
  if (k < 1) throw validation_error("le_critical: k must be >= 1");
  const double r = p.r;
  const double x0 = std::sqrt(1.0 + 4.0 * p.lambda(k));
  const double arg = 1.0 - p.theta_i * r * x0;
  if (!(arg > 0.0))
    throw numerical_error("le_critical: mode k=" + std::to_string(k) +
                          " is beyond the cutoff (1 - theta_i R X_k(0) <= 0)");
  const double lg = std::log(arg);
  const double num = (1.0 + x0) * (r * r + 2.0 * r * lg) + 2.0 * lg * lg;
  const double den = r * r * (1.0 + x0) + 2.0 * r * lg;
  return num / den;
}

// Largest k whose zero-crossing Lewis number exists and lies in (0,1).
// Returns 0 when no transverse mode is unstable for any Le in (0,1).
inline int max_unstable_mode(const Params& p) {
  int K = 0;
  for (int k = 1;; ++k) {
    const double x0 = std::sqrt(1.0 + 4.0 * p.lambda(k));
    if (!(1.0 - p.theta_i * p.r * x0 > 0.0)) break;
    const double lc = le_critical(k, p);
    if (lc > 0.0 && lc < 1.0) K = k;
    else break;
  }
  return K;
}

// Unique real root of D_{0,k}(., le) in (0, sqrt(lambda_k)); bisection is
// valid there because dD/dlambda > 0.
inline double growth_root(double le, int k, const Params& p) {
  const double top = std::sqrt(p.lambda(k));
  auto f = [&](double lam) {
    return reduced_dispersion(k, complexd(lam, 0.0), le, p).real();
  };
  double lo = 0.0, hi = top;
  double flo = f(lo), fhi = f(hi);
  if (flo >= 0.0 && flo < 1e-10 && fhi > 0.0) return 0.0;  // at Le = Le_c
  if (!(flo < 0.0) || !(fhi > 0.0))
    throw numerical_error(
        "growth_root: no sign change on [0, sqrt(lambda_k)] at Le=" +
        std::to_string(le) + " (Le >= Le_c within tolerance?)");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // double precision exhausted
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct GrowthCurve {
  std::vector<double> le;      // abscissae, increasing
  std::vector<double> lambda;  // phi~(Le), decreasing
  double le_c = 0.0;
  double lambda_star = 0.0;  // left-endpoint value (Le -> 0+)
};

// Samples the implicit curve lambda = phi~(Le) on a log-spaced grid in
// (0, Le_c]. The left endpoint is evaluated at Le = 1e-6.
inline GrowthCurve trace_growth_curve(int n_samples, const Params& p,
                                      int k = 1) {
  if (n_samples < 2)
    throw validation_error("trace_growth_curve: need at least 2 samples");
  GrowthCurve c;
  c.le_c = le_critical(k, p);
  const double le_min = 1e-6;
  c.lambda_star = growth_root(le_min, k, p);
  const double lo = std::log(le_min), hi = std::log(c.le_c);
  for (int i = 0; i < n_samples; ++i) {
    const double le = std::exp(lo + (hi - lo) * i / (n_samples - 1));
    c.le.push_back(le);
    c.lambda.push_back(i + 1 == n_samples ? 0.0 : growth_root(le, k, p));
  }
  return c;
}

// All sign-change roots of lambda -> D_{0,k}(lambda, le) on [0, lambda_max],
// located on a uniform grid and refined by bisection.
inline std::vector<double> real_root_scan(int k, double le, double lambda_max,
                                          int n_grid, const Params& p) {
  if (!(lambda_max > 0.0))
    throw validation_error("real_root_scan: lambda_max must be positive");
  auto f = [&](double lam) {
    return reduced_dispersion(k, complexd(lam, 0.0), le, p).real();
  };
  std::vector<double> roots;
  double prev_x = 0.0, prev_f = f(0.0);
  if (prev_f == 0.0) roots.push_back(0.0);
  for (int i = 1; i <= n_grid; ++i) {
    const double x = lambda_max * i / n_grid;
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (prev_f != 0.0 && (prev_f < 0.0) != (fx < 0.0)) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) < 0.0) == (prev_f < 0.0) ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_f = fx;
  }
  return roots;
}

}  // namespace thickflame

#endif
