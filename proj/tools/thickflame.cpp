#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "thickflame/errors.hpp"
#include "thickflame/run_config.hpp"
#include "thickflame/runner.hpp"

using namespace thickflame;

namespace {

void add_common_flags(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
  sub->add_option("--config", config_path, "key=value configuration file");
  sub->add_option("--theta-i", cfg.theta_i, "ignition temperature in (0,1)");
  sub->add_option("--le", cfg.le, "Lewis number");
  sub->add_option("--ell", cfg.ell, "strip width");
  sub->add_option("--delta", cfg.delta, "mollifier half-plateau width (default R/8)");
  sub->add_option("--a", cfg.a, "left domain extent A");
  sub->add_option("--b", cfg.b, "right domain extent B");
  sub->add_option("--nx", cfg.nx, "collocation order per subdomain");
  sub->add_option("--ny", cfg.ny, "number of transverse grid points (even)");
  sub->add_option("--dt", cfg.dt, "time step (substepped if above the stability bound)");
  sub->add_option("--t-final", cfg.t_final, "final time");
  sub->add_option("--snapshot-every", cfg.snapshot_every, "trace recording cadence");
  sub->add_option("--eps", cfg.eps, "initial perturbation amplitude");
  sub->add_option("--seed", cfg.seed, "seed for randomized diagnostics");
  sub->add_option("--out", cfg.out, "output directory (or $THICKFLAME_OUT)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-interface combustion front simulator"};
  app.require_subcommand(1);

  RunConfig flags;
  flags.out.clear();
  std::string config_path;

  const struct { const char* name; Mode mode; const char* help; } modes[] = {
      {"wave", Mode::wave, "dump the planar traveling-wave profiles"},
      {"dispersion", Mode::dispersion, "trace the growth curve lambda(Le)"},
      {"lecrit", Mode::lecrit, "tabulate critical Lewis numbers per mode"},
      {"linear", Mode::linear, "evolve the linearized system"},
      {"nonlinear", Mode::nonlinear, "evolve the fully nonlinear system"},
      {"validate", Mode::validate, "run the cross-module consistency checks"},
  };
  for (const auto& m : modes)
    add_common_flags(app.add_subcommand(m.name, m.help), flags, config_path);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);

    CLI::App* sub = app.get_subcommands().front();
    for (const auto& m : modes)
      if (sub->get_name() == m.name) cfg.mode = m.mode;

    // flags win over the config file
    auto take = [&](const char* flag, auto& dst, const auto& src) {
      if (sub->count(flag) > 0) dst = src;
    };
    take("--theta-i", cfg.theta_i, flags.theta_i);
    take("--le", cfg.le, flags.le);
    take("--ell", cfg.ell, flags.ell);
    take("--delta", cfg.delta, flags.delta);
    take("--a", cfg.a, flags.a);
    take("--b", cfg.b, flags.b);
    take("--nx", cfg.nx, flags.nx);
    take("--ny", cfg.ny, flags.ny);
    take("--dt", cfg.dt, flags.dt);
    take("--t-final", cfg.t_final, flags.t_final);
    take("--snapshot-every", cfg.snapshot_every, flags.snapshot_every);
    take("--eps", cfg.eps, flags.eps);
    take("--seed", cfg.seed, flags.seed);
    take("--out", cfg.out, flags.out);

    if (cfg.out.empty()) {
      if (const char* env = std::getenv("THICKFLAME_OUT"); env && *env)
        cfg.out = env;
      else
        cfg.out = "runs";
    }

    return run(cfg);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
}
