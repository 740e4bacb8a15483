#ifndef THICKFLAME_NONLINEAR_SIM_HPP
#define THICKFLAME_NONLINEAR_SIM_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "thickflame/boundary.hpp"
#include "thickflame/errors.hpp"
#include "thickflame/grid.hpp"
#include "thickflame/linear_sim.hpp"
#include "thickflame/mollifier.hpp"
#include "thickflame/params.hpp"
#include "thickflame/state.hpp"
#include "thickflame/traveling_wave.hpp"

namespace thickflame {

// Boundary traces feeding the front dynamics: values and derivatives of u at
// the ignition interface and of w at the trailing interface, one entry per
// y node. Derivatives are with respect to the physical strip coordinates.
struct TraceBundle {
  Eigen::VectorXd u_r, ux_rp, ux_rm, uy_r, uyy_r, uxy_rp, uxx_rp;
  Eigen::VectorXd w_0, wx_0, wy_0, wyy_0, wxy_0, wxx_0;
};

// Front time derivatives recovered from spatial traces (the second-order
// Stefan closure).
struct FrontRates {
  Eigen::VectorXd ut_r;  // d/dt of u at the ignition interface
  Eigen::VectorXd wt_0;  // d/dt of w at the trailing interface
};

struct InterfaceTrace {
  double t = 0.0;
  Eigen::VectorXd f;  // ignition front perturbation, F = R + f
  Eigen::VectorXd g;  // trailing front perturbation, G = g
};

// Trapezoid value and slope of the mollifier pair (beta, beta(.-R)) at xi.
struct MollValues {
  double b = 0.0, bp = 0.0, br = 0.0, brp = 0.0;
};

inline double beta(double xi, double delta) { return Mollifier(delta).beta(xi); }

// Index of the mollifier interval containing xi (1..8 from the left), or 0
// outside the support. Kink points belong to the interval on their right.
inline int interval_of(double xi, double r, double delta) {
  const double d = delta;
  if (xi >= -2 * d && xi < -d) return 1;
  if (xi >= -d && xi < 0) return 2;
  if (xi >= 0 && xi < d) return 3;
  if (xi >= d && xi < 2 * d) return 4;
  if (xi >= r - 2 * d && xi < r - d) return 5;
  if (xi >= r - d && xi < r) return 6;
  if (xi >= r && xi < r + d) return 7;
  if (xi >= r + d && xi < r + 2 * d) return 8;
  return 0;
}

// ---------------------------------------------------------------------------

// Pseudo-spectral stepper for the fully nonlinear front system. Quadratic
// terms are evaluated pointwise in physical space on the mollifier support,
// with every x differentiation expanded analytically so that only smooth
// fields ever meet a collocation matrix (the trapezoid slope is only a
// piecewise-constant coefficient). Owns per-step scratch; one owner steps a
// state at a time.
class NonlinearStepper {
public:
  NonlinearStepper(const Grid& g, const Params& p)
      : g_(g), p_(p), wave_(p), moll_(p.delta), bc_(g, p) {
    const int n = g.n_x;
    for (int s = 0; s < 3; ++s) {
      const int id = s + 1;
      mv_[s].resize(n + 1);
      th2_[s].resize(n + 1); th3_[s].resize(n + 1);
      ph2_[s].resize(n + 1); ph3_[s].resize(n + 1); ph4_[s].resize(n + 1);
      support_[s].clear();
      for (int i = 0; i <= n; ++i) {
        const double xi = g.xi_node(id, i);
        mv_[s][i] = {moll_.beta(xi), moll_.beta_prime(xi),
                     moll_.beta(xi - p.r), moll_.beta_prime(xi - p.r)};
        if (interval_of(xi, p.r, p.delta) != 0) support_[s].push_back(i);
        if (id == 1) {
          th2_[s][i] = th3_[s][i] = 0.0;
          ph2_[s][i] = ph3_[s][i] = ph4_[s][i] = 0.0;
        } else {
          // one-sided at the subdomain ends: stay on this subdomain's branch
          const Side side = (i == 0) ? Side::left : Side::right;
          th2_[s][i] = wave_.theta_deriv(xi, 2, side);
          th3_[s][i] = wave_.theta_deriv(xi, 3, side);
          ph2_[s][i] = wave_.phi_deriv(xi, 2, side);
          ph3_[s][i] = wave_.phi_deriv(xi, 3, side);
          ph4_[s][i] = wave_.phi_deriv(xi, 4, side);
        }
      }
    }
  }

  const InterfaceSystem& interface_system() const { return bc_; }

  // -- spec-level operations --------------------------------------------

  TraceBundle traces(const State& s) const {
    fill_derivs(s);
    return traces_impl(s);
  }

  // Front time derivatives from the trace bundle. The denominators must stay
  // away from zero: |u(R) + u_x(R+)| < theta_i and |Le w(0+) + w_x(0+)| < Le/R.
  FrontRates rho_time_derivatives(const TraceBundle& b) const {
    const double ti = p_.theta_i, le = p_.le, r = p_.r;
    const int ny = static_cast<int>(b.u_r.size());
    FrontRates fr;
    fr.ut_r.resize(ny);
    fr.wt_0.resize(ny);
    for (int j = 0; j < ny; ++j) {
      const double den_u = b.u_r[j] + b.ux_rp[j];
      if (!(std::abs(den_u) < ti))
        throw numerical_error(
            "front rates: |u(R) + u_x(R+)| >= theta_i at y index " +
            std::to_string(j) + " (perturbation left the small regime)");
      const double lap_u = b.uxx_rp[j] + b.uyy_r[j];
      fr.ut_r[j] =
          (b.ux_rp[j] + lap_u - b.uyy_r[j] * b.ux_rp[j] / ti -
           b.u_r[j] * b.uyy_r[j] / ti - 2.0 * b.uy_r[j] * b.uxy_rp[j] / ti +
           b.uy_r[j] * b.uy_r[j] / (ti * ti) *
               (b.uxx_rp[j] - b.u_r[j] - ti)) /
          (1.0 - den_u / ti);

      const double den_w = le * b.w_0[j] + b.wx_0[j];
      if (!(std::abs(den_w) < le / r))
        throw numerical_error(
            "front rates: |Le w(0+) + w_x(0+)| >= Le/R at y index " +
            std::to_string(j));
      const double lap_w = b.wxx_0[j] + b.wyy_0[j];
      fr.wt_0[j] =
          (le * b.wx_0[j] + lap_w +
           r / le * (b.wyy_0[j] * den_w + 2.0 * b.wy_0[j] * b.wxy_0[j]) +
           r * r / (le * le) * b.wy_0[j] * b.wy_0[j] *
               (-le * le * b.w_0[j] + le * le / r + b.wxx_0[j])) /
          (le + r * den_w);
    }
    return fr;
  }

  // Nonlinear boundary data for the two inhomogeneous interface relations.
  std::pair<Eigen::RowVectorXd, Eigen::RowVectorXd> boundary_rhs_h(
      const TraceBundle& b) const {
    const double ti = p_.theta_i, le = p_.le, r = p_.r;
    const int ny = static_cast<int>(b.u_r.size());
    Eigen::RowVectorXd h4(ny), h7(ny);
    for (int j = 0; j < ny; ++j) {
      const double wy2 = b.wy_0[j] * b.wy_0[j];
      h4[j] = -r * le * wy2 / (le * le + r * r * wy2);
      const double uy2 = b.uy_r[j] * b.uy_r[j];
      h7[j] = le * uy2 / (r * (ti * ti + uy2));
    }
    return {h4, h7};
  }

  // Quadratic interior terms for one subdomain, restricted to collocation
  // nodes inside the requested mollifier interval (0 selects the whole
  // support). Contributions are accumulated into nu (and nw for the right
  // two subdomains). Assumes the derivative tables match `s`.
  void accumulate_nonlinear(int subdomain_id, int interval_id, const State& s,
                            const TraceBundle& b, const FrontRates& fr,
                            Eigen::MatrixXd& nu, Eigen::MatrixXd* nw,
                            bool refresh_tables = true) const {
    if (refresh_tables) fill_derivs(s);
    const int ny = g_.n_y;
    const int si = subdomain_id - 1;
    const double sc = 2.0 / g_.map(subdomain_id).length();
    const double cy = 2.0 * std::numbers::pi / p_.ell;
    const double ti = p_.theta_i, le = p_.le, r = p_.r;

    const Eigen::MatrixXd* wfield = subdomain_id == 2 ? &s.w2 : &s.w3;
    const FieldDerivs& du = dv_[si];             // u1, u2, u3 tables
    const FieldDerivs& dw = dv_[si + 2];         // w2, w3 tables (si >= 1)
    const bool has_w = subdomain_id >= 2 && nw != nullptr;

    for (int i : support_[si]) {
      if (interval_id != 0 &&
          interval_of(g_.xi_node(subdomain_id, i), r, p_.delta) != interval_id)
        continue;
      const MollValues& m = mv_[si][i];
      const double t2 = th2_[si][i], t3 = th3_[si][i];
      const double p2 = ph2_[si][i], p3 = ph3_[si][i], p4 = ph4_[si][i];
      for (int j = 0; j < ny; ++j) {
        // localized shift field and its derivatives from the traces
        const double fh = b.u_r[j] / ti, fhy = b.uy_r[j] / ti,
                     fhyy = b.uyy_r[j] / ti, fht = fr.ut_r[j] / ti;
        const double gh = -r / le * b.w_0[j], ghy = -r / le * b.wy_0[j],
                     ghyy = -r / le * b.wyy_0[j], ght = -r / le * fr.wt_0[j];
        const double rho = m.br * fh + m.b * gh;
        const double rho_x = m.brp * fh + m.bp * gh;
        const double rho_y = m.br * fhy + m.b * ghy;
        const double rho_xy = m.brp * fhy + m.bp * ghy;
        const double rho_yy = m.br * fhyy + m.b * ghyy;
        const double rho_xyy = m.brp * fhyy + m.bp * ghyy;
        const double rho_t = m.br * fht + m.b * ght;
        const double rho_tx = m.brp * fht + m.bp * ght;
        const double q = 1.0 + rho_x;

        const double ux = sc * du.x(i, j);
        const double uxx = sc * sc * du.xx(i, j);
        const double uxy = sc * cy * du.xym(i, j);

        // temperature equation
        const double pu = rho * t2 + ux;
        const double f1 = pu / q;
        const double f2 =
            ((rho_x + rho_yy) * pu + 2.0 * rho_y * (rho_y * t2 + uxy)) / q -
            (2.0 * rho_y * rho_xy * pu +
             (rho_y * rho_y - rho_x * rho_x) * (rho * t3 + t2 + uxx) -
             2.0 * rho_x * (rho * t3 - rho_y * rho_y * t2 + uxx)) /
                (q * q);
        nu(i, j) += rho_t * f1 - f2;

        if (!has_w) continue;

        // concentration-gradient equation: x derivative of the quadratic
        // part of the underlying concentration equation, expanded so that
        // the piecewise mollifier slope never gets differentiated
        const double w = (*wfield)(i, j);
        const double wx = sc * dw.x(i, j);
        const double wxx = sc * sc * dw.xx(i, j);
        const double wy = cy * dw.ym(i, j);
        const double wxy = sc * cy * dw.xym(i, j);
        const double pw = rho * p2 + w;
        const double dpw = rho_x * p2 + rho * p3 + wx;
        const double g1 = pw / q;
        const double dg1 = dpw / q;
        const double sfac = rho * p3 + p2 + wx;
        const double dt1 =
            rho_xyy * pw + (le * rho_x + rho_yy) * dpw +
            4.0 * rho_y * rho_xy * p2 + 2.0 * rho_y * rho_y * p3 +
            2.0 * rho_xy * wy + 2.0 * rho_y * wxy;
        const double dt2 =
            2.0 * rho_xy * rho_xy * pw + 2.0 * rho_y * rho_xy * dpw +
            2.0 * rho_y * rho_xy * sfac +
            (rho_y * rho_y - rho_x * rho_x) *
                (rho_x * p3 + rho * p4 + p3 + wxx) -
            2.0 * rho_x * (rho_x * p3 + rho * p4 - rho_y * rho_y * p3 -
                           2.0 * rho_y * rho_xy * p2 + wxx);
        (*nw)(i, j) += rho_tx * g1 + rho_t * dg1 - (dt1 / q - dt2 / (q * q)) / le;
      }
    }
  }

  // Interior right-hand side: linearized part plus the quadratic terms on
  // the mollifier support, and the boundary data (H4, H7).
  struct Rhs {
    State ds;
    Eigen::RowVectorXd h4, h7;
  };

  Rhs rhs(const State& s) const {
    compute_rhs(s);
    Rhs out;
    out.ds = rhs_;
    out.h4 = h4_;
    out.h7 = h7_;
    return out;
  }

  void step(State& s, double dt) const {
    if (!(dt > 0.0)) throw validation_error("step_nonlinear: dt must be positive");
    compute_rhs(s);
    s.u1 += dt * rhs_.u1;
    s.u2 += dt * rhs_.u2;
    s.u3 += dt * rhs_.u3;
    s.w2 += dt * rhs_.w2;
    s.w3 += dt * rhs_.w3;
    bc_.apply(s, &h4_, &h7_);
    s.t += dt;
    if (s.max_abs() > kBlowupGuard)
      throw numerical_error("step_nonlinear: field magnitude exceeded 1e12 "
                            "(time step above the explicit stability bound)");
  }

  InterfaceTrace extract_interfaces(const State& s) const {
    InterfaceTrace tr;
    tr.t = s.t;
    tr.f = s.u2.row(0).transpose() / p_.theta_i;
    tr.g = -p_.r / p_.le * s.w2.row(g_.n_x).transpose();
    return tr;
  }

private:
  // mapped-coordinate derivative tables of one field
  struct FieldDerivs {
    Eigen::MatrixXd x, xx, ym, yym, xym;
  };

  void fill_derivs(const State& s) const {
    const std::array<const Eigen::MatrixXd*, 5> fields = {&s.u1, &s.u2, &s.u3,
                                                          &s.w2, &s.w3};
    for (int f = 0; f < 5; ++f) {
      FieldDerivs& d = dv_[f];
      d.x.noalias() = g_.d1 * *fields[f];
      d.xx.noalias() = g_.d2 * *fields[f];
      g_.fy->dy_dyy_rows(*fields[f], d.ym, d.yym);
      d.xym.noalias() = g_.d1 * d.ym;
    }
  }

  TraceBundle traces_impl(const State& s) const {
    TraceBundle b;
    const int n = g_.n_x;
    const double sr = 2.0 / g_.map(2).length();
    const double sb = 2.0 / g_.map(3).length();
    const double cy = 2.0 * std::numbers::pi / p_.ell;
    const FieldDerivs& du2 = dv_[1];
    const FieldDerivs& du3 = dv_[2];
    const FieldDerivs& dw2 = dv_[3];

    b.u_r = s.u2.row(0).transpose();
    b.ux_rm = sr * du2.x.row(0).transpose();
    b.ux_rp = sb * du3.x.row(n).transpose();
    b.uy_r = cy * du2.ym.row(0).transpose();
    b.uyy_r = cy * cy * du2.yym.row(0).transpose();
    b.uxy_rp = sb * cy * du3.xym.row(n).transpose();
    b.uxx_rp = sb * sb * du3.xx.row(n).transpose();

    b.w_0 = s.w2.row(n).transpose();
    b.wx_0 = sr * dw2.x.row(n).transpose();
    b.wy_0 = cy * dw2.ym.row(n).transpose();
    b.wyy_0 = cy * cy * dw2.yym.row(n).transpose();
    b.wxy_0 = sr * cy * dw2.xym.row(n).transpose();
    b.wxx_0 = sr * sr * dw2.xx.row(n).transpose();
    return b;
  }

  void compute_rhs(const State& s) const {
    fill_derivs(s);
    const double sa = 2.0 / g_.map(1).length();
    const double sr = 2.0 / g_.map(2).length();
    const double sb = 2.0 / g_.map(3).length();
    const double cys = 4.0 * std::numbers::pi * std::numbers::pi /
                       (p_.ell * p_.ell);
    const double le = p_.le;
    rhs_.t = s.t;
    rhs_.u1 = sa * dv_[0].x + sa * sa * dv_[0].xx + cys * dv_[0].yym;
    rhs_.u2 = sr * dv_[1].x + sr * sr * dv_[1].xx + cys * dv_[1].yym;
    rhs_.u3 = sb * dv_[2].x + sb * sb * dv_[2].xx + cys * dv_[2].yym;
    rhs_.w2 = sr * dv_[3].x + sr * sr / le * dv_[3].xx + cys / le * dv_[3].yym;
    rhs_.w3 = sb * dv_[4].x + sb * sb / le * dv_[4].xx + cys / le * dv_[4].yym;

    const TraceBundle b = traces_impl(s);
    const FrontRates fr = rho_time_derivatives(b);
    std::tie(h4_, h7_) = boundary_rhs_h(b);
    accumulate_nonlinear(1, 0, s, b, fr, rhs_.u1, nullptr, false);
    accumulate_nonlinear(2, 0, s, b, fr, rhs_.u2, &rhs_.w2, false);
    accumulate_nonlinear(3, 0, s, b, fr, rhs_.u3, &rhs_.w3, false);
  }

  const Grid& g_;
  Params p_;
  WaveProfile wave_;
  Mollifier moll_;
  InterfaceSystem bc_;
  std::array<std::vector<MollValues>, 3> mv_;
  std::array<std::vector<int>, 3> support_;
  std::array<std::vector<double>, 3> th2_, th3_, ph2_, ph3_, ph4_;
  mutable std::array<FieldDerivs, 5> dv_;
  mutable State rhs_;
  mutable Eigen::RowVectorXd h4_, h7_;
};

// ---------------------------------------------------------------------------
// Field reconstruction for plotting: physical temperature and concentration
// from the perturbation state, the shift field and the planar wave. The
// mapped node (xi, y) sits at the physical location xi + rho(xi, y).

struct Reconstruction {
  // one matrix per subdomain, nodes x y
  std::array<Eigen::MatrixXd, 3> theta, phi;
};

inline Reconstruction reconstruct_fields(const State& s, const Grid& g,
                                         const Params& p) {
  const WaveProfile wave(p);
  const Mollifier moll(p.delta);
  Reconstruction rec;
  const int n = g.n_x, ny = g.n_y;

  // antiderivative in x with the value anchored at node n (x = -1)
  Eigen::MatrixXd m = g.d1;
  m.row(n).setZero();
  m(n, n) = 1.0;
  const Eigen::PartialPivLU<Eigen::MatrixXd> int_lu(m);

  // v on the middle subdomain: dv/dxi = w, v(0) = 0
  Eigen::MatrixXd rhs2 = 0.5 * g.map(2).length() * s.w2;
  rhs2.row(n).setZero();
  const Eigen::MatrixXd v2 = int_lu.solve(rhs2);
  // v on the right subdomain: anchored by continuity at xi = R
  Eigen::MatrixXd rhs3 = 0.5 * g.map(3).length() * s.w3;
  rhs3.row(n) = v2.row(0);
  const Eigen::MatrixXd v3 = int_lu.solve(rhs3);

  for (int sd = 1; sd <= 3; ++sd) {
    Eigen::MatrixXd th(n + 1, ny), ph(n + 1, ny);
    const Eigen::MatrixXd& u = sd == 1 ? s.u1 : (sd == 2 ? s.u2 : s.u3);
    for (int i = 0; i <= n; ++i) {
      const double xi = g.xi_node(sd, i);
      const Side side = (i == 0) ? Side::left : Side::right;
      const double th0 = wave.theta0(xi);
      const double ph0 = wave.phi0(xi);
      const double th1 = sd == 1 ? 0.0 : wave.theta_deriv(xi, 1, side);
      const double ph1 = sd == 1 ? 0.0 : wave.phi_deriv(xi, 1, side);
      const double br = moll.beta(xi - p.r), bb = moll.beta(xi);
      for (int j = 0; j < ny; ++j) {
        const double rho = br * s.u2(0, j) / p.theta_i -
                           bb * p.r / p.le * s.w2(n, j);
        const double v =
            sd == 1 ? 0.0 : (sd == 2 ? v2(i, j) : v3(i, j));
        th(i, j) = th0 + rho * th1 + u(i, j);
        ph(i, j) = ph0 + rho * ph1 + v;
      }
    }
    rec.theta[sd - 1] = th;
    rec.phi[sd - 1] = ph;
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Run orchestration with the steady-pattern detector.

struct NonlinearRunConfig {
  int n_x = 16, n_y = 32;
  double dt = 1e-5;       // reporting step; substepped if unstable
  double t_final = 10.0;
  double snapshot_every = 0.1;
  double epsilon = 1e-3;
  bool halt_on_steady = false;
  double steady_window = 0.1;  // trailing fraction of elapsed time
  double steady_tol = 0.01;    // relative change of |f|_inf over the window
};

struct NonlinearRunResult {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> f, g;
  std::vector<double> f_norm;
  std::vector<int> dominant_mode;
  bool steady = false;
  int steady_mode = -1;
  State final_state;
};

inline int dominant_y_mode(const Eigen::VectorXd& f, FourierTransform& ft) {
  const Eigen::VectorXcd fh = ft.to_modes(f);
  int best = 0;
  double mag = -1.0;
  for (int k = 1; k < fh.size(); ++k)
    if (std::abs(fh[k]) > mag) { mag = std::abs(fh[k]); best = k; }
  return best;
}

// Steady two-cell style detector: over the trailing window the front norm
// moves by less than the tolerance, the dominant transverse mode is stable,
// and the pattern is not planar.
inline bool detect_steady(const std::vector<double>& t,
                          const std::vector<double>& fnorm,
                          const std::vector<int>& mode, double window_frac,
                          double tol) {
  const size_t n = t.size();
  if (n < 8) return false;
  const double t_lo = t.back() - window_frac * (t.back() - t.front());
  size_t lo = n - 1;
  while (lo > 0 && t[lo - 1] >= t_lo) --lo;
  if (n - lo < 4) return false;
  double mn = fnorm[lo], mx = fnorm[lo];
  for (size_t i = lo; i < n; ++i) {
    mn = std::min(mn, fnorm[i]);
    mx = std::max(mx, fnorm[i]);
    if (mode[i] != mode[lo]) return false;
  }
  if (!(mn > 0.0)) return false;
  return (mx - mn) / mx < tol;
}

inline State default_nonlinear_init(const Grid& g, const Params& p,
                                    double eps) {
  return default_linear_init(g, p, eps);
}

inline NonlinearRunResult run_nonlinear(
    const State& init, const Grid& g, const Params& p,
    const NonlinearRunConfig& cfg,
    const std::function<void(const std::string&)>& warn = {}) {
  NonlinearStepper stepper(g, p);

  double dt = cfg.dt;
  const double dts = stable_dt(g, p);
  if (cfg.dt > dts) {
    const int n_sub = static_cast<int>(std::ceil(cfg.dt / dts));
    dt = cfg.dt / n_sub;
    if (warn)
      warn("dt=" + std::to_string(cfg.dt) +
           " exceeds the measured explicit stability bound " +
           std::to_string(dts) + "; substepping at dt=" + std::to_string(dt));
  }
  if (cfg.dt > cfl_warning_bound(g, p) && warn)
    warn("dt exceeds the conservative collocation CFL estimate");

  NonlinearRunResult res;
  State s = init;
  stepper.interface_system().apply(s);
  s.t = 0.0;

  auto record = [&](const State& st) {
    const InterfaceTrace tr = stepper.extract_interfaces(st);
    res.t.push_back(st.t);
    res.f.push_back(tr.f);
    res.g.push_back(tr.g);
    res.f_norm.push_back(tr.f.cwiseAbs().maxCoeff());
    res.dominant_mode.push_back(dominant_y_mode(tr.f, *g.fy));
  };
  record(s);

  const long long snaps = static_cast<long long>(
      std::llround(cfg.t_final / cfg.snapshot_every));
  const long long steps_per_snap = std::max<long long>(
      1, static_cast<long long>(std::llround(cfg.snapshot_every / dt)));
  for (long long snap = 1; snap <= snaps; ++snap) {
    for (long long i = 0; i < steps_per_snap; ++i) stepper.step(s, dt);
    record(s);
    if (detect_steady(res.t, res.f_norm, res.dominant_mode, cfg.steady_window,
                      cfg.steady_tol)) {
      res.steady = true;
      res.steady_mode = res.dominant_mode.back();
      if (cfg.halt_on_steady) break;
    }
  }
  res.final_state = std::move(s);
  return res;
}

}  // namespace thickflame

#endif
