#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thickflame/csv_io.hpp"
#include "thickflame/run_config.hpp"
#include "thickflame/runner.hpp"

using namespace thickflame;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path temp_dir(const char* tag) {
  const fs::path d = fs::temp_directory_path() / (std::string("tf_test_") + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}
}  // namespace

TEST_CASE("defaults per mode") {
  RunConfig lin;
  lin.mode = Mode::linear;
  lin.fill_defaults();
  CHECK(lin.theta_i == 0.75);
  CHECK(lin.ell == 100.0);
  CHECK(lin.a == 10.0);
  CHECK(lin.b == 10.0);
  CHECK(lin.dt == 1e-3);
  CHECK(lin.eps == 1e-2);
  CHECK(lin.t_final == 1.0);

  RunConfig nl;
  nl.mode = Mode::nonlinear;
  nl.fill_defaults();
  CHECK(nl.dt == 1e-5);
  CHECK(nl.eps == 1e-3);
}

TEST_CASE("config validation names the offending field") {
  RunConfig c;
  c.mode = Mode::linear;
  c.ell = -3.0;
  c.fill_defaults();
  try {
    c.validate();
    FAIL("expected a validation error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("ell") != std::string::npos);
  }
}

TEST_CASE("config file parsing") {
  const fs::path dir = temp_dir("cfg");
  {
    std::ofstream os(dir / "run.cfg");
    os << "# comment line\n";
    os << "mode = dispersion\n";
    os << "theta_i = 0.6\n";
    os << "le=0.25   # trailing comment\n";
    os << "ny = 16\n";
  }
  const RunConfig c = parse_config_file((dir / "run.cfg").string());
  CHECK(c.mode == Mode::dispersion);
  CHECK(c.theta_i == 0.6);
  CHECK(c.le == 0.25);
  CHECK(c.ny == 16);

  {
    std::ofstream os(dir / "bad.cfg");
    os << "no_such_key = 1\n";
  }
  CHECK_THROWS_AS(parse_config_file((dir / "bad.cfg").string()), validation_error);
  {
    std::ofstream os(dir / "bad2.cfg");
    os << "le = not_a_number\n";
  }
  CHECK_THROWS_AS(parse_config_file((dir / "bad2.cfg").string()), validation_error);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/x.cfg"), validation_error);
}

TEST_CASE("git-style blob hash") {
  CHECK(git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
  CHECK(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_CASE("wave mode artifacts and determinism") {
  const fs::path d1 = temp_dir("wave1"), d2 = temp_dir("wave2");
  RunConfig c;
  c.mode = Mode::wave;
  c.out = d1.string();
  CHECK(run(c) == 0);
  c.out = d2.string();
  CHECK(run(c) == 0);
  const std::string a = slurp(d1 / "wave_profile.csv");
  CHECK(a == slurp(d2 / "wave_profile.csv"));  // byte identical
  CHECK(a.find("# theta_i=0.75") != std::string::npos);
  CHECK(a.find("xi,theta0,phi0") != std::string::npos);
  // the profile column at xi = 0 is exactly 1
  CHECK(a.find("\n0,1,0\n") != std::string::npos);
  CHECK(fs::exists(d1 / "wave_profile.gp"));
  const std::string gp = slurp(d1 / "wave_profile.gp");
  CHECK(gp.find("dt 1") != std::string::npos);  // solid temperature curve
  CHECK(gp.find("dt 2") != std::string::npos);  // dashed concentration curve
}

TEST_CASE("lecrit mode emits the critical table") {
  const fs::path d = temp_dir("lecrit");
  RunConfig c;
  c.mode = Mode::lecrit;
  c.out = d.string();
  CHECK(run(c) == 0);
  const std::string s = slurp(d / "lecrit.csv");
  const auto pos = s.find("\n1,");
  REQUIRE(pos != std::string::npos);
  const double lec1 = std::stod(s.substr(pos + 3));
  CHECK(lec1 == Catch::Approx(0.5641).margin(5e-4));
  CHECK(s.find("# max_unstable_mode=8") != std::string::npos);
}

TEST_CASE("dispersion mode curve artifact") {
  const fs::path d = temp_dir("disp");
  RunConfig c;
  c.mode = Mode::dispersion;
  c.out = d.string();
  CHECK(run(c) == 0);
  const std::string s = slurp(d / "growth_curve.csv");
  CHECK(s.find("# lambda_star=0.031546") != std::string::npos);
  CHECK(fs::exists(d / "growth_curve.gp"));
}

TEST_CASE("plot emission requires its artifact") {
  const fs::path d = temp_dir("noplot");
  RunConfig c;
  c.mode = Mode::wave;
  c.out = d.string();
  c.fill_defaults();
  CHECK_THROWS_AS(emit_plot_scripts(c, d), validation_error);
}

TEST_CASE("linear mode writes traces with a manifest") {
  const fs::path d = temp_dir("lin");
  RunConfig c;
  c.mode = Mode::linear;
  c.out = d.string();
  c.nx = 12;
  c.ny = 8;
  c.t_final = 0.01;
  c.dt = 1e-3;
  c.snapshot_every = 5e-3;
  CHECK(run(c) == 0);
  const std::string s = slurp(d / "linear_traces.csv");
  CHECK(s.find("t,y,u,w") != std::string::npos);
  CHECK(s.find("# config_sha1=") != std::string::npos);
  CHECK(fs::exists(d / "manifest.json"));
  const std::string mj = slurp(d / "manifest.json");
  CHECK(mj.find("\"config_sha1\"") != std::string::npos);
}

TEST_CASE("csv writer validates row width") {
  CsvWriter w("/tmp/tf_row_width.csv", {"a", "b"});
  CHECK_THROWS_AS(w.row({1.0}), validation_error);
}
