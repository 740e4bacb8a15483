#ifndef THICKFLAME_LINEAR_SIM_HPP
#define THICKFLAME_LINEAR_SIM_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "thickflame/boundary.hpp"
#include "thickflame/errors.hpp"
#include "thickflame/grid.hpp"
#include "thickflame/params.hpp"
#include "thickflame/state.hpp"

namespace thickflame {

inline constexpr double kBlowupGuard = 1e12;

// Interior right-hand side of the linearized system on the mapped
// subdomains (y diffusion carries the 4 pi^2 / ell^2 strip factor, and the
// w fields the extra 1/Le).
inline State rhs_linear(const State& s, const Grid& g, const Params& p) {
  const double sa = 2.0 / g.map(1).length();
  const double sr = 2.0 / g.map(2).length();
  const double sb = 2.0 / g.map(3).length();
  const double cy = 4.0 * std::numbers::pi * std::numbers::pi / (p.ell * p.ell);
  const double le = p.le;

  State r;
  r.t = s.t;
  r.u1 = sa * (g.d1 * s.u1) + sa * sa * (g.d2 * s.u1) + cy * g.fy->dyy_rows(s.u1);
  r.u2 = sr * (g.d1 * s.u2) + sr * sr * (g.d2 * s.u2) + cy * g.fy->dyy_rows(s.u2);
  r.u3 = sb * (g.d1 * s.u3) + sb * sb * (g.d2 * s.u3) + cy * g.fy->dyy_rows(s.u3);
  r.w2 = sr * (g.d1 * s.w2) + sr * sr / le * (g.d2 * s.w2) +
         cy / le * g.fy->dyy_rows(s.w2);
  r.w3 = sb * (g.d1 * s.w3) + sb * sb / le * (g.d2 * s.w3) +
         cy / le * g.fy->dyy_rows(s.w3);
  return r;
}

inline void apply_bcs_linear(State& s, const InterfaceSystem& bc) {
  bc.apply(s);
}

// One forward-Euler step: interior update, then the interface solve
// overwrites the ten boundary values.
inline void step_linear(State& s, double dt, const Grid& g, const Params& p,
                        const InterfaceSystem& bc) {
  if (!(dt > 0.0)) throw validation_error("step_linear: dt must be positive");
  const State r = rhs_linear(s, g, p);
  s.u1 += dt * r.u1;
  s.u2 += dt * r.u2;
  s.u3 += dt * r.u3;
  s.w2 += dt * r.w2;
  s.w3 += dt * r.w3;
  bc.apply(s);
  s.t += dt;
  if (s.max_abs() > kBlowupGuard)
    throw numerical_error("step_linear: field magnitude exceeded 1e12 "
                          "(time step above the explicit stability bound)");
}

// ---------------------------------------------------------------------------
// Per-Fourier-mode stepping. The linearized system decouples in k, so a run
// evolves only the modes that are nonzero in the initial data. Real and
// imaginary parts of each mode coefficient ride in the two columns of a
// (n_x+1) x 2 block, which lets the interface solve be reused unchanged.

struct ModeBlock {
  int k = 0;
  Eigen::MatrixXd u1, u2, u3, w2, w3;          // (n_x+1) x 2
  Eigen::MatrixXd au1, au2, au3, aw2, aw3;     // per-field mode operators
};

namespace detail {

inline ModeBlock make_mode_block(int k, const Grid& g, const Params& p) {
  ModeBlock b;
  b.k = k;
  const int m = g.n_x + 1;
  b.u1.setZero(m, 2); b.u2.setZero(m, 2); b.u3.setZero(m, 2);
  b.w2.setZero(m, 2); b.w3.setZero(m, 2);
  const double sa = 2.0 / g.map(1).length();
  const double sr = 2.0 / g.map(2).length();
  const double sb = 2.0 / g.map(3).length();
  const double lamk = p.lambda(k);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  b.au1 = sa * g.d1 + sa * sa * g.d2 - lamk * id;
  b.au2 = sr * g.d1 + sr * sr * g.d2 - lamk * id;
  b.au3 = sb * g.d1 + sb * sb * g.d2 - lamk * id;
  b.aw2 = sr * g.d1 + sr * sr / p.le * g.d2 - lamk / p.le * id;
  b.aw3 = sb * g.d1 + sb * sb / p.le * g.d2 - lamk / p.le * id;
  return b;
}

inline void step_mode(ModeBlock& b, double dt, const InterfaceSystem& bc) {
  b.u1 += dt * (b.au1 * b.u1);
  b.u2 += dt * (b.au2 * b.u2);
  b.u3 += dt * (b.au3 * b.u3);
  b.w2 += dt * (b.aw2 * b.w2);
  b.w3 += dt * (b.aw3 * b.w3);
  bc.apply(b.u1, b.u2, b.u3, b.w2, b.w3);
}

inline double mode_max_abs(const ModeBlock& b) {
  double m = 0.0;
  for (const auto* f : {&b.u1, &b.u2, &b.u3, &b.w2, &b.w3})
    m = std::max(m, f->cwiseAbs().maxCoeff());
  return m;
}

// Stacks the five fields of a mode block into one vector (single column).
inline Eigen::VectorXd stack_mode(const ModeBlock& b) {
  const int m = static_cast<int>(b.u1.rows());
  Eigen::VectorXd v(5 * m);
  v << b.u1.col(0), b.u2.col(0), b.u3.col(0), b.w2.col(0), b.w3.col(0);
  return v;
}

inline void unstack_mode(const Eigen::VectorXd& v, ModeBlock& b) {
  const int m = static_cast<int>(b.u1.rows());
  b.u1.col(0) = v.segment(0, m);
  b.u2.col(0) = v.segment(m, m);
  b.u3.col(0) = v.segment(2 * m, m);
  b.w2.col(0) = v.segment(3 * m, m);
  b.w3.col(0) = v.segment(4 * m, m);
  b.u1.col(1).setZero(); b.u2.col(1).setZero(); b.u3.col(1).setZero();
  b.w2.col(1).setZero(); b.w3.col(1).setZero();
}

}  // namespace detail

// Conservative explicit-Euler bound used only to decide whether to warn and
// substep; deliberately pessimistic (jac_min^2 / N^4 scaling).
inline double cfl_warning_bound(const Grid& g, const Params& p) {
  const double jac_min = std::min({g.map(1).jac(), g.map(2).jac(), g.map(3).jac()});
  const double n4 = std::pow(double(g.n_x), 4);
  return 0.5 * jac_min * jac_min / (std::max(1.0, 1.0 / p.le) * n4);
}

// Largest stable step of the composed update (interior Euler + interface
// solve), measured on the actual step operator of the stiffest retained
// Fourier mode: the matrices of the affine-free map M(dt) = P + dt P L are
// assembled column by column and the spectral radius is bisected in dt.
// Physical growth up to rate 0.1 is admitted by the acceptance threshold.
inline double stable_dt(const Grid& g, const Params& p) {
  const int k_max = g.n_y / 2;
  const InterfaceSystem bc(g, p);
  ModeBlock b = detail::make_mode_block(k_max, g, p);
  const int dim = 5 * (g.n_x + 1);

  auto apply_step = [&](const Eigen::VectorXd& v, double dt) {
    detail::unstack_mode(v, b);
    detail::step_mode(b, dt, bc);
    return detail::stack_mode(b);
  };

  Eigen::MatrixXd P(dim, dim), PL(dim, dim);
  const double dt0 = 1.0;
  for (int i = 0; i < dim; ++i) {
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(dim, i);
    P.col(i) = apply_step(e, 0.0);
    PL.col(i) = (apply_step(e, dt0) - P.col(i)) / dt0;
  }

  auto rho = [&](double dt) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(P + dt * PL, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };

  double lo = 1e-9, hi = 1e-1;
  if (rho(lo) > 1.0 + 0.1 * lo)
    throw numerical_error("stable_dt: no stable explicit step found");
  while (rho(hi) <= 1.0 + 0.1 * hi && hi < 1.0) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(lo * hi);
    (rho(mid) <= 1.0 + 0.1 * mid ? lo : hi) = mid;
  }
  return 0.9 * lo;
}

// Least-squares slope of log(amplitude) over the last half of the series.
inline double measured_growth_rate(const std::vector<double>& t,
                                   const std::vector<double>& amp) {
  if (t.size() != amp.size() || t.size() < 10)
    throw validation_error("measured_growth_rate: need >= 10 samples");
  double amin = amp[0], amax = amp[0];
  for (double a : amp) {
    amin = std::min(amin, a);
    amax = std::max(amax, a);
  }
  if (!(amin > 0.0) || amax / amin < 10.0)
    throw numerical_error(
        "measured_growth_rate: amplitudes span less than one decade");
  const size_t lo = t.size() / 2;
  const size_t n = t.size() - lo;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (size_t i = lo; i < t.size(); ++i) {
    const double y = std::log(amp[i]);
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

// ---------------------------------------------------------------------------

struct TraceSeries {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> u;  // u(t, xi=0, y), reported from the 0+ side
  std::vector<Eigen::VectorXd> w;  // w(t, 0+, y)

  std::vector<double> max_abs_u() const { return max_abs(u); }
  std::vector<double> max_abs_w() const { return max_abs(w); }

private:
  static std::vector<double> max_abs(const std::vector<Eigen::VectorXd>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.cwiseAbs().maxCoeff());
    return out;
  }
};

struct LinearRunConfig {
  int n_x = 32, n_y = 64;
  double dt = 1e-3;           // reporting step; substepped if unstable
  double t_final = 1.0;
  double snapshot_every = 1e-2;
  double epsilon = 1e-2;      // amplitude of the default initial datum
};

// Default initial datum: w2 = eps (1 + sin^2 y) localized at the middle of
// the reaction zone by a fixed-width bump (compatible with the interface
// relations, and grid-convergent unlike a single-line datum), all other
// fields zero.
inline State default_linear_init(const Grid& g, const Params& p, double eps) {
  State s = State::zero(g);
  const double sigma = p.r / 8.0;
  for (int i = 0; i <= g.n_x; ++i) {
    const double z = (g.xi_node(2, i) - 0.5 * p.r) / sigma;
    const double bump = std::exp(-z * z);
    for (int j = 0; j < g.n_y; ++j) {
      const double sy = std::sin(g.y_node(j));
      s.w2(i, j) = eps * (1.0 + sy * sy) * bump;
    }
  }
  return s;
}

// Evolves the linearized system per Fourier mode and records the traces at
// xi = 0. Modes identically zero in the initial data stay zero and are
// skipped. If the requested dt exceeds the measured stability bound the run
// substeps and `warn` (when set) receives one message.
inline TraceSeries run_linear(
    const State& init, const Grid& g, const Params& p,
    const LinearRunConfig& cfg,
    const std::function<void(const std::string&)>& warn = {}) {
  const InterfaceSystem bc(g, p);
  const int n = g.n_x, nh = g.fy->half_size();

  double dt = cfg.dt;
  int n_sub = 1;
  const double dts = stable_dt(g, p);
  if (cfg.dt > dts) {
    n_sub = static_cast<int>(std::ceil(cfg.dt / dts));
    dt = cfg.dt / n_sub;
    if (warn)
      warn("dt=" + std::to_string(cfg.dt) +
           " exceeds the measured explicit stability bound " +
           std::to_string(dts) + "; substepping at dt=" + std::to_string(dt));
  }
  if (cfg.dt > cfl_warning_bound(g, p) && warn)
    warn("dt exceeds the conservative collocation CFL estimate");

  // decompose initial data into modes; keep the nonzero ones
  std::vector<ModeBlock> active;
  for (int k = 0; k < nh; ++k) {
    ModeBlock b = detail::make_mode_block(k, g, p);
    bool nonzero = false;
    auto load = [&](Eigen::MatrixXd& dst, const Eigen::MatrixXd& src) {
      for (int i = 0; i <= n; ++i) {
        const Eigen::VectorXcd row = g.fy->to_modes(src.row(i).transpose());
        dst(i, 0) = row[k].real();
        dst(i, 1) = row[k].imag();
      }
      nonzero = nonzero || dst.cwiseAbs().maxCoeff() != 0.0;
    };
    load(b.u1, init.u1); load(b.u2, init.u2); load(b.u3, init.u3);
    load(b.w2, init.w2); load(b.w3, init.w3);
    if (nonzero) active.push_back(std::move(b));
  }

  TraceSeries series;
  auto record = [&](double t) {
    Eigen::VectorXcd urow = Eigen::VectorXcd::Zero(nh);
    Eigen::VectorXcd wrow = Eigen::VectorXcd::Zero(nh);
    for (const auto& b : active) {
      urow[b.k] = {b.u2(n, 0), b.u2(n, 1)};
      wrow[b.k] = {b.w2(n, 0), b.w2(n, 1)};
    }
    series.t.push_back(t);
    series.u.push_back(g.fy->from_modes(urow));
    series.w.push_back(g.fy->from_modes(wrow));
  };

  for (auto& b : active) bc.apply(b.u1, b.u2, b.u3, b.w2, b.w3);
  record(0.0);

  const long long total_io_steps =
      static_cast<long long>(std::llround(cfg.t_final / cfg.dt));
  const long long snap_stride = std::max<long long>(
      1, static_cast<long long>(std::llround(cfg.snapshot_every / cfg.dt)));
  for (long long io = 1; io <= total_io_steps; ++io) {
    for (int ss = 0; ss < n_sub; ++ss)
      for (auto& b : active) detail::step_mode(b, dt, bc);
    double m = 0.0;
    for (const auto& b : active) m = std::max(m, detail::mode_max_abs(b));
    if (m > kBlowupGuard)
      throw numerical_error("run_linear: blow-up guard tripped");
    if (io % snap_stride == 0 || io == total_io_steps)
      record(io * cfg.dt);
  }
  return series;
}

}  // namespace thickflame

#endif
