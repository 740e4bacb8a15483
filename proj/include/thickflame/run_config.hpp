#ifndef THICKFLAME_RUN_CONFIG_HPP
#define THICKFLAME_RUN_CONFIG_HPP

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "thickflame/errors.hpp"
#include "thickflame/params.hpp"

namespace thickflame {

enum class Mode { wave, dispersion, lecrit, linear, nonlinear, validate };

inline Mode mode_from_string(const std::string& s) {
  if (s == "wave") return Mode::wave;
  if (s == "dispersion") return Mode::dispersion;
  if (s == "lecrit") return Mode::lecrit;
  if (s == "linear") return Mode::linear;
  if (s == "nonlinear") return Mode::nonlinear;
  if (s == "validate") return Mode::validate;
  throw validation_error("unknown mode '" + s + "'");
}

inline std::string mode_to_string(Mode m) {
  switch (m) {
    case Mode::wave: return "wave";
    case Mode::dispersion: return "dispersion";
    case Mode::lecrit: return "lecrit";
    case Mode::linear: return "linear";
    case Mode::nonlinear: return "nonlinear";
    default: return "validate";
  }
}

// One run of the tool. Defaults are the reference experiment parameters:
// the linear run uses dt = 1e-3 and eps = 1e-2, the nonlinear run dt = 1e-5
// and eps = 1e-3.
struct RunConfig {
  Mode mode = Mode::linear;
  double theta_i = 0.75;
  double le = 0.3;
  double ell = 100.0;
  double delta = -1.0;  // <= 0: use R/8
  double a = 10.0;
  double b = 10.0;
  int nx = 32;
  int ny = 64;
  double dt = -1.0;             // mode default when <= 0
  double t_final = -1.0;        // mode default when <= 0
  double snapshot_every = -1.0; // mode default when <= 0
  double eps = -1.0;            // mode default when < 0
  long seed = 0;
  std::string out = "runs";

  void fill_defaults() {
    const bool nl = mode == Mode::nonlinear;
    if (dt <= 0.0) dt = nl ? 1e-5 : 1e-3;
    if (t_final <= 0.0) t_final = nl ? 10.0 : 1.0;
    if (snapshot_every <= 0.0) snapshot_every = nl ? 0.05 : 0.01;
    if (eps < 0.0) eps = nl ? 1e-3 : 1e-2;
    if (nl && nx == 32 && ny == 64) { nx = 16; ny = 32; }
  }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0))
        throw validation_error(std::string("config field '") + name +
                               "' must be positive");
    };
    if (!(theta_i > 0.0 && theta_i < 1.0))
      throw validation_error("config field 'theta_i' must lie in (0,1)");
    positive(le, "le");
    positive(ell, "ell");
    positive(a, "a");
    positive(b, "b");
    if (nx < 4) throw validation_error("config field 'nx' must be >= 4");
    if (ny < 4 || ny % 2 != 0)
      throw validation_error("config field 'ny' must be even and >= 4");
    positive(dt, "dt");
    positive(t_final, "t_final");
    positive(snapshot_every, "snapshot_every");
    if (eps < 0.0) throw validation_error("config field 'eps' must be >= 0");
  }

  Params params() const {
    return Params::make(theta_i, le, ell, delta, a, b);
  }

  std::string serialize() const {
    std::ostringstream os;
    os << "mode=" << mode_to_string(mode) << "\n";
    os << "theta_i=" << format_val(theta_i) << "\n";
    os << "le=" << format_val(le) << "\n";
    os << "ell=" << format_val(ell) << "\n";
    os << "delta=" << format_val(delta) << "\n";
    os << "a=" << format_val(a) << "\n";
    os << "b=" << format_val(b) << "\n";
    os << "nx=" << nx << "\n";
    os << "ny=" << ny << "\n";
    os << "dt=" << format_val(dt) << "\n";
    os << "t_final=" << format_val(t_final) << "\n";
    os << "snapshot_every=" << format_val(snapshot_every) << "\n";
    os << "eps=" << format_val(eps) << "\n";
    os << "seed=" << seed << "\n";
    return os.str();
  }

private:
  static std::string format_val(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
};

// Applies "key=value" pairs onto a config; unknown keys are rejected with
// the offending name.
inline void apply_kv(RunConfig& c, const std::string& key,
                     const std::string& value) {
  auto to_d = [&](const char* name) {
    try {
      size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw validation_error(std::string("config field '") + name +
                             "': cannot parse '" + value + "'");
    }
  };
  auto to_i = [&](const char* name) {
    try {
      size_t pos = 0;
      const long v = std::stol(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw validation_error(std::string("config field '") + name +
                             "': cannot parse '" + value + "'");
    }
  };
  if (key == "mode") c.mode = mode_from_string(value);
  else if (key == "theta_i") c.theta_i = to_d("theta_i");
  else if (key == "le") c.le = to_d("le");
  else if (key == "ell") c.ell = to_d("ell");
  else if (key == "delta") c.delta = to_d("delta");
  else if (key == "a") c.a = to_d("a");
  else if (key == "b") c.b = to_d("b");
  else if (key == "nx") c.nx = static_cast<int>(to_i("nx"));
  else if (key == "ny") c.ny = static_cast<int>(to_i("ny"));
  else if (key == "dt") c.dt = to_d("dt");
  else if (key == "t_final") c.t_final = to_d("t_final");
  else if (key == "snapshot_every") c.snapshot_every = to_d("snapshot_every");
  else if (key == "eps") c.eps = to_d("eps");
  else if (key == "seed") c.seed = to_i("seed");
  else if (key == "out") c.out = value;
  else throw validation_error("unknown config key '" + key + "'");
}

// Flat key=value file; '#' starts a comment. Flags are applied afterwards by
// the caller and therefore win.
inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw validation_error("cannot open config file '" + path + "'");
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("config line " + std::to_string(lineno) +
                             ": expected key=value");
    apply_kv(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

}  // namespace thickflame

#endif
