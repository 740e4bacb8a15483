#ifndef THICKFLAME_RUNNER_HPP
#define THICKFLAME_RUNNER_HPP

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "thickflame/csv_io.hpp"
#include "thickflame/dispersion.hpp"
#include "thickflame/eigenmode.hpp"
#include "thickflame/linear_sim.hpp"
#include "thickflame/nonlinear_sim.hpp"
#include "thickflame/run_config.hpp"
#include "thickflame/traveling_wave.hpp"

namespace thickflame {

namespace fs = std::filesystem;

inline void write_manifest_json(const RunConfig& c, const fs::path& dir) {
  nlohmann::json j;
  j["mode"] = mode_to_string(c.mode);
  j["theta_i"] = c.theta_i;
  j["le"] = c.le;
  j["ell"] = c.ell;
  j["delta"] = c.delta;
  j["a"] = c.a;
  j["b"] = c.b;
  j["nx"] = c.nx;
  j["ny"] = c.ny;
  j["dt"] = c.dt;
  j["t_final"] = c.t_final;
  j["snapshot_every"] = c.snapshot_every;
  j["eps"] = c.eps;
  j["seed"] = c.seed;
  j["config_sha1"] = git_blob_sha1(c.serialize());
  const Params p = c.params();
  j["derived"]["r"] = p.r;
  j["derived"]["delta"] = p.delta;
  fs::create_directories(dir);
  std::ofstream os(dir / "manifest.json");
  os << j.dump(2) << "\n";
}

inline void stamp_manifest(CsvWriter& w, const RunConfig& c) {
  w.manifest("mode", mode_to_string(c.mode));
  w.manifest("theta_i", c.theta_i);
  w.manifest("le", c.le);
  w.manifest("ell", c.ell);
  w.manifest("delta", c.delta);
  w.manifest("a", c.a);
  w.manifest("b", c.b);
  w.manifest("nx", c.nx);
  w.manifest("ny", c.ny);
  w.manifest("dt", c.dt);
  w.manifest("t_final", c.t_final);
  w.manifest("snapshot_every", c.snapshot_every);
  w.manifest("eps", c.eps);
  w.manifest("config_sha1", git_blob_sha1(c.serialize()));
}

// ---------------------------------------------------------------------------

inline void run_wave(const RunConfig& c, const fs::path& dir) {
  const Params p = c.params();
  const WaveProfile w(p);
  CsvWriter csv(dir / "wave_profile.csv", {"xi", "theta0", "phi0"});
  stamp_manifest(csv, c);
  csv.manifest("r", p.r);
  const int n = 1200;
  for (int i = 0; i <= n; ++i) {
    const double xi = -p.a_ext + (p.b_ext + p.a_ext) * i / n;
    csv.row({xi, w.theta0(xi), w.phi0(xi)});
  }
  csv.write();
}

inline void run_dispersion(const RunConfig& c, const fs::path& dir) {
  const Params p = c.params();
  const GrowthCurve curve = trace_growth_curve(200, p);
  CsvWriter csv(dir / "growth_curve.csv", {"le", "lambda"});
  stamp_manifest(csv, c);
  csv.manifest("le_c", curve.le_c);
  csv.manifest("lambda_star", curve.lambda_star);
  csv.manifest("sqrt_lambda1", std::sqrt(p.lambda(1)));
  for (size_t i = 0; i < curve.le.size(); ++i)
    csv.row({curve.le[i], curve.lambda[i]});
  csv.write();
}

inline void run_lecrit(const RunConfig& c, const fs::path& dir) {
  const Params p = c.params();
  const int K = max_unstable_mode(p);
  CsvWriter csv(dir / "lecrit.csv", {"k", "le_c"});
  stamp_manifest(csv, c);
  csv.manifest("max_unstable_mode", K);
  for (int k = 1; k <= K; ++k)
    csv.row({static_cast<double>(k), le_critical(k, p)});
  csv.write();
}

inline void run_linear_mode(const RunConfig& c, const fs::path& dir) {
  const Params p = c.params();
  const Grid g = Grid::make(p, c.nx, c.ny);
  LinearRunConfig lc;
  lc.n_x = c.nx;
  lc.n_y = c.ny;
  lc.dt = c.dt;
  lc.t_final = c.t_final;
  lc.snapshot_every = c.snapshot_every;
  lc.epsilon = c.eps;
  const State init = default_linear_init(g, p, c.eps);
  auto warn = [](const std::string& m) { std::cerr << "warning: " << m << "\n"; };
  const TraceSeries ts = run_linear(init, g, p, lc, warn);

  CsvWriter csv(dir / "linear_traces.csv", {"t", "y", "u", "w"});
  stamp_manifest(csv, c);
  for (size_t i = 0; i < ts.t.size(); ++i)
    for (int j = 0; j < c.ny; ++j)
      csv.row({ts.t[i], g.y_node(j), ts.u[i][j], ts.w[i][j]});
  csv.write();
  write_manifest_json(c, dir);
}

inline void run_nonlinear_mode(const RunConfig& c, const fs::path& dir) {
  const Params p = c.params();
  const Grid g = Grid::make(p, c.nx, c.ny);
  NonlinearRunConfig nc;
  nc.n_x = c.nx;
  nc.n_y = c.ny;
  nc.dt = c.dt;
  nc.t_final = c.t_final;
  nc.snapshot_every = c.snapshot_every;
  nc.epsilon = c.eps;
  const State init = default_nonlinear_init(g, p, c.eps);
  auto warn = [](const std::string& m) { std::cerr << "warning: " << m << "\n"; };
  const NonlinearRunResult res = run_nonlinear(init, g, p, nc, warn);

  CsvWriter csv(dir / "nonlinear_interfaces.csv", {"t", "y", "f", "g"});
  stamp_manifest(csv, c);
  csv.manifest("steady", res.steady ? 1 : 0);
  csv.manifest("dominant_mode", res.dominant_mode.back());
  for (size_t i = 0; i < res.t.size(); ++i)
    for (int j = 0; j < c.ny; ++j)
      csv.row({res.t[i], g.y_node(j), res.f[i][j], res.g[i][j]});
  csv.write();

  const Reconstruction rec = reconstruct_fields(res.final_state, g, p);
  CsvWriter fields(dir / "nonlinear_fields.csv", {"xi", "y", "theta", "phi"});
  stamp_manifest(fields, c);
  fields.manifest("t", res.final_state.t);
  for (int sd = 1; sd <= 3; ++sd)
    for (int i = g.n_x; i >= 0; --i)  // left-to-right in xi
      for (int j = 0; j < c.ny; ++j)
        fields.row({g.xi_node(sd, i), g.y_node(j), rec.theta[sd - 1](i, j),
                    rec.phi[sd - 1](i, j)});
  fields.write();
  write_manifest_json(c, dir);

  std::cout << (res.steady ? "steady pattern reached" : "no steady pattern")
            << "; dominant y-mode " << res.dominant_mode.back() << "\n";
}

// Cross-checks tying the modules together: the discretized operator against
// the explicit eigenfunction, and a measured growth rate against the
// dispersion root. Prints one line per check.
inline int run_validate(const RunConfig& c, std::ostream& os) {
  int failures = 0;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    os << (ok ? "PASS" : "FAIL") << "  " << name << "  " << detail << "\n";
    if (!ok) ++failures;
  };

  {
    const Params p = Params::make(c.theta_i, c.le, c.ell, c.delta, c.a, c.b);
    const Grid g = Grid::make(p, 64, 8);
    const EigenMode m = eigenmode_build(p, 1);
    const State s = eigenmode_sample(m, g);
    const State r = rhs_linear(s, g, p);
    double num = 0.0;
    for (auto [rf, sf] : {std::pair{&r.u1, &s.u1}, {&r.u2, &s.u2},
                          {&r.u3, &s.u3}, {&r.w2, &s.w2}, {&r.w3, &s.w3}})
      num = std::max(num, (*rf - m.tilde_lambda * *sf).cwiseAbs().maxCoeff());
    const double rel = num / (m.tilde_lambda * s.max_abs());
    report("eigenfunction operator residual", rel < 1e-3,
           "relative " + format_g17(rel) + " (tol 1e-3)");

    const InterfaceSystem bc(g, p);
    const Eigen::MatrixXd res = bc.residuals(s);
    const double bres = res.bottomRows(7).cwiseAbs().maxCoeff();
    report("eigenfunction interface residual", bres < 1e-8,
           format_g17(bres) + " (tol 1e-8)");
  }

  {
    // growth-rate cross-check on a narrow strip, where the growth is fast
    // enough for a short run and the extents reproduce the dispersion
    // eigenvalue on the truncated domain
    const Params p = Params::make(c.theta_i, 0.2, 30.0, -1.0, 16.0, 20.0);
    const Grid g = Grid::make(p, 20, 8);
    const EigenMode m = eigenmode_build(p, 1);
    const double target = growth_root(0.2, 1, p);
    LinearRunConfig lc;
    lc.n_x = 20;
    lc.n_y = 8;
    lc.dt = 1e-2;
    lc.t_final = 1.35 * std::log(10.0) / target;
    lc.snapshot_every = 0.5;
    const State init = eigenmode_sample(m, g, 1e-9);
    const TraceSeries ts = run_linear(init, g, p, lc);
    const double rate = measured_growth_rate(ts.t, ts.max_abs_w());
    const double rel = std::abs(rate - target) / target;
    report("measured growth rate vs dispersion root", rel < 0.05,
           "measured " + format_g17(rate) + " target " + format_g17(target));
  }

  return failures == 0 ? 0 : 2;
}

// ---------------------------------------------------------------------------

inline void emit_plot_scripts(const RunConfig& c, const fs::path& dir) {
  auto require = [&](const char* f) {
    if (!fs::exists(dir / f))
      throw validation_error(std::string("missing artifact ") + f +
                             "; run the producing mode first");
  };
  auto script = [&](const char* name, const std::string& body) {
    std::ofstream os(dir / name);
    os << "# gnuplot script\nset datafile separator ','\nset datafile commentschars '#'\n"
       << body;
  };
  switch (c.mode) {
    case Mode::wave:
      require("wave_profile.csv");
      script("wave_profile.gp",
             "set xlabel 'xi'\nset yrange [0:1.1]\n"
             "plot 'wave_profile.csv' using 1:2 with lines lw 2 dt 1 title 'Theta0', \\\n"
             "     'wave_profile.csv' using 1:3 with lines lw 2 dt 2 title 'Phi0'\n");
      break;
    case Mode::dispersion:
      require("growth_curve.csv");
      script("growth_curve.gp",
             "set xlabel 'Le'\nset ylabel 'lambda'\n"
             "plot 'growth_curve.csv' using 1:2 with lines lw 2 title 'growth rate'\n");
      break;
    case Mode::lecrit:
      require("lecrit.csv");
      script("lecrit.gp",
             "set xlabel 'k'\nset ylabel 'Le_c'\n"
             "plot 'lecrit.csv' using 1:2 with linespoints title 'Le_c(k)'\n");
      break;
    case Mode::linear:
      require("linear_traces.csv");
      script("linear_traces.gp",
             "set xlabel 't'\nset ylabel 'y'\nset view map\nset pm3d interpolate 2,2\n"
             "splot 'linear_traces.csv' using 1:2:3 with pm3d title 'u(t,0,y)', \\\n"
             "      '' using 1:2:4 with pm3d title 'w(t,0,y)'\n");
      break;
    case Mode::nonlinear:
      require("nonlinear_interfaces.csv");
      require("nonlinear_fields.csv");
      script("interfaces.gp",
             "set xlabel 'y'\nset ylabel 'front'\n"
             "plot '< grep -v \"^#\" nonlinear_interfaces.csv | tail -n +2' "
             "using 2:3 with lines title 'f (last snapshot)'\n");
      script("fields.gp",
             "set xlabel 'xi'\nset ylabel 'y'\nset view map\n"
             "splot 'nonlinear_fields.csv' using 1:2:3 with pm3d title 'Theta'\n");
      break;
    default:
      break;
  }
}

// Mode dispatch; artifacts land in cfg.out.
inline int run(RunConfig c, std::ostream& os = std::cout) {
  c.fill_defaults();
  c.validate();
  const fs::path dir(c.out);
  switch (c.mode) {
    case Mode::wave: run_wave(c, dir); break;
    case Mode::dispersion: run_dispersion(c, dir); break;
    case Mode::lecrit: run_lecrit(c, dir); break;
    case Mode::linear: run_linear_mode(c, dir); break;
    case Mode::nonlinear: run_nonlinear_mode(c, dir); break;
    case Mode::validate: return run_validate(c, os);
  }
  emit_plot_scripts(c, dir);
  return 0;
}

}  // namespace thickflame

#endif
