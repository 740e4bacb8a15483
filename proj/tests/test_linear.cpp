#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "thickflame/boundary.hpp"
#include "thickflame/eigenmode.hpp"
#include "thickflame/linear_sim.hpp"

using namespace thickflame;
using Catch::Approx;

namespace {
const Params P = Params::make(0.75, 0.3, 100.0);

State random_state(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  State s = State::zero(g);
  for (auto* f : {&s.u1, &s.u2, &s.u3, &s.w2, &s.w3})
    for (auto& v : f->reshaped()) v = dist(rng);
  return s;
}

// max residual of the seven interface relations (rows 3..9; the first three
// rows are the outer Dirichlet conditions)
double interface_residual(const InterfaceSystem& bc, const State& s) {
  const Eigen::MatrixXd res = bc.residuals(s);
  return res.bottomRows(7).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("boundary solve leaves a zero state zero") {
  const Grid g = Grid::make(P, 16, 8);
  const InterfaceSystem bc(g, P);
  State s = State::zero(g);
  bc.apply(s);
  CHECK(s.max_abs() == 0.0);
}

TEST_CASE("boundary solve satisfies all ten relations after random interiors") {
  const Grid g = Grid::make(P, 24, 8);
  const InterfaceSystem bc(g, P);
  State s = random_state(g, 3);
  bc.apply(s);
  const Eigen::MatrixXd res = bc.residuals(s);
  CHECK(res.cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, s.max_abs()));
}

TEST_CASE("eigenmode constants against the 50-digit solve") {
  const EigenMode m = eigenmode_build(P, 1);
  CHECK(m.tilde_lambda == Approx(0.006706722341545448216089).epsilon(1e-13));
  CHECK(m.c1 == Approx(-201.8452029424587202469).epsilon(1e-12));
  CHECK(m.c2 == Approx(202.8452029424587202469).epsilon(1e-12));
  CHECK(m.c3 == Approx(174.7153133416523141382).epsilon(1e-12));
  CHECK(m.d1 == Approx(-58.40348060000672389435).epsilon(1e-12));
  CHECK(m.d2 == Approx(-3.426961207422748289484).epsilon(1e-12));
  CHECK(m.d3 == Approx(13.24652618214318612905).epsilon(1e-12));
  CHECK(m.w_trace_zero() == Approx(-61.83044180742947218383).epsilon(1e-12));
  CHECK(m.w_trace_zero() != 0.0);
}

TEST_CASE("eigenmode profile is continuous at the interfaces") {
  const EigenMode m = eigenmode_build(P, 1);
  const double scale = std::abs(m.c1);
  CHECK(std::abs(m.c1 + m.c2 - 1.0) < 1e-12 * scale);
  const double left = m.c1 * std::exp(m.nu_minus * P.r) + m.c2 * std::exp(m.nu_plus * P.r);
  const double right = m.c3 * std::exp(m.nu_minus * P.r);
  CHECK(left == Approx(right).epsilon(1e-12));
}

TEST_CASE("sampled eigenmode satisfies the interface relations") {
  const Grid g = Grid::make(P, 64, 8);
  const InterfaceSystem bc(g, P);
  const State s = eigenmode_sample(eigenmode_build(P, 1), g);
  CHECK(interface_residual(bc, s) < 1e-8);
}

TEST_CASE("discretized operator reproduces the eigenvalue") {
  const Grid g = Grid::make(P, 64, 8);
  const EigenMode m = eigenmode_build(P, 1);
  const State s = eigenmode_sample(m, g);
  const State r = rhs_linear(s, g, P);
  double num = 0.0;
  const double den = m.tilde_lambda * s.max_abs();
  for (auto [rf, sf] : {std::pair{&r.u1, &s.u1}, {&r.u2, &s.u2}, {&r.u3, &s.u3},
                        {&r.w2, &s.w2}, {&r.w3, &s.w3}})
    num = std::max(num, (*rf - m.tilde_lambda * *sf).cwiseAbs().maxCoeff());
  CHECK(num / den < 1e-3);
}

TEST_CASE("stepping a zero state keeps it zero") {
  const Grid g = Grid::make(P, 16, 8);
  const InterfaceSystem bc(g, P);
  State s = State::zero(g);
  for (int i = 0; i < 5; ++i) step_linear(s, 1e-5, g, P, bc);
  CHECK(s.max_abs() == 0.0);
  CHECK(s.t == Approx(5e-5));
}

TEST_CASE("eigenmode grows exponentially under the stepper") {
  const Grid g = Grid::make(P, 24, 8);
  const InterfaceSystem bc(g, P);
  const EigenMode m = eigenmode_build(P, 1);
  const State s0 = eigenmode_sample(m, g);
  State s = s0;
  const double dt = 1e-6;  // within the explicit bound at n_x = 24
  for (int i = 0; i < 10000; ++i) step_linear(s, dt, g, P, bc);
  const double factor = std::exp(m.tilde_lambda * 0.01);
  // compare pointwise on the interior of the middle subdomain, away from the
  // truncated far ends
  for (int i = 1; i < g.n_x; ++i)
    for (int j = 0; j < g.n_y; ++j) {
      CHECK(s.u2(i, j) == Approx(factor * s0.u2(i, j)).margin(1e-9).epsilon(1e-3));
      CHECK(s.w2(i, j) == Approx(factor * s0.w2(i, j)).margin(1e-9).epsilon(1e-3));
    }
}

TEST_CASE("too large a step trips the blow-up guard") {
  const Grid g = Grid::make(P, 32, 8);
  const InterfaceSystem bc(g, P);
  State s = eigenmode_sample(eigenmode_build(P, 1), g);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 200; ++i) step_linear(s, 1e-1, g, P, bc);
      }(),
      numerical_error);
}

TEST_CASE("linear evolution does not mix Fourier modes") {
  const Grid g = Grid::make(P, 24, 16);
  const InterfaceSystem bc(g, P);
  State s = eigenmode_sample(eigenmode_build(P, 1), g);
  const double scale = s.max_abs();
  for (int i = 0; i < 10; ++i) step_linear(s, 1e-5, g, P, bc);
  for (int i = 0; i <= g.n_x; ++i) {
    const Eigen::VectorXcd row = g.fy->to_modes(s.u2.row(i).transpose());
    for (int k = 0; k < row.size(); ++k)
      if (k != 1) CHECK(std::abs(row[k]) < 1e-12 * scale);
  }
}

TEST_CASE("grid-aligned shifts commute with the evolution") {
  const Grid g = Grid::make(P, 16, 16);
  const InterfaceSystem bc(g, P);
  const int shift = 4;  // y0 = 2 pi shift / n_y
  State a = eigenmode_sample(eigenmode_build(P, 1), g, 1.0, 0.0);
  State b = eigenmode_sample(eigenmode_build(P, 1), g, 1.0,
                             2.0 * std::numbers::pi * shift / g.n_y);
  for (int i = 0; i < 5; ++i) {
    step_linear(a, 1e-5, g, P, bc);
    step_linear(b, 1e-5, g, P, bc);
  }
  for (int i = 0; i <= g.n_x; ++i)
    for (int j = 0; j < g.n_y; ++j)
      CHECK(b.u2(i, (j + shift) % g.n_y) == Approx(a.u2(i, j)).margin(1e-12));
}

TEST_CASE("measured growth rate") {
  std::vector<double> t, amp, dec;
  for (int i = 0; i < 200; ++i) {
    t.push_back(i * 1.0);
    amp.push_back(std::exp(0.02 * t.back()));
    dec.push_back(std::exp(-0.05 * t.back()));
  }
  CHECK(measured_growth_rate(t, amp) == Approx(0.02).margin(1e-6));
  CHECK(measured_growth_rate(t, dec) < 0.0);
  std::vector<double> shortt(t.begin(), t.begin() + 5),
      shorta(amp.begin(), amp.begin() + 5);
  CHECK_THROWS_AS(measured_growth_rate(shortt, shorta), validation_error);
  std::vector<double> flat(200, 1.0);
  CHECK_THROWS_AS(measured_growth_rate(t, flat), numerical_error);
}

TEST_CASE("zero initial amplitude yields identically zero traces") {
  const Grid g = Grid::make(P, 16, 16);
  LinearRunConfig cfg;
  cfg.n_x = 16; cfg.n_y = 16; cfg.t_final = 0.05; cfg.dt = 1e-3;
  cfg.snapshot_every = 1e-2; cfg.epsilon = 0.0;
  const State init = default_linear_init(g, P, 0.0);
  const TraceSeries ts = run_linear(init, g, P, cfg);
  for (const auto& u : ts.u) CHECK(u.cwiseAbs().maxCoeff() == 0.0);
  for (const auto& w : ts.w) CHECK(w.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("per-mode runner agrees with physical-space stepping") {
  const Grid g = Grid::make(P, 16, 8);
  const InterfaceSystem bc(g, P);
  const double dts = stable_dt(g, P);
  REQUIRE(dts > 0.0);

  State init = default_linear_init(g, P, 1e-2);
  LinearRunConfig cfg;
  cfg.n_x = 16; cfg.n_y = 8;
  cfg.dt = dts; cfg.t_final = 50 * dts; cfg.snapshot_every = 50 * dts;
  const TraceSeries ts = run_linear(init, g, P, cfg);

  State s = init;
  const InterfaceSystem bc2(g, P);
  bc2.apply(s);
  for (int i = 0; i < 50; ++i) step_linear(s, dts, g, P, bc2);
  const Eigen::VectorXd u_trace = s.u2.row(g.n_x).transpose();
  const Eigen::VectorXd w_trace = s.w2.row(g.n_x).transpose();
  REQUIRE(ts.t.size() >= 2);
  CHECK((ts.u.back() - u_trace).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((ts.w.back() - w_trace).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("trace refinement convergence at short horizon") {
  LinearRunConfig coarse, fine;
  coarse.n_x = 24; coarse.n_y = 16; coarse.dt = 1e-3; coarse.t_final = 0.2;
  coarse.snapshot_every = 0.1; coarse.epsilon = 1e-2;
  fine = coarse;
  fine.n_x = 32;
  fine.dt = 5e-4;

  const Grid gc = Grid::make(P, coarse.n_x, coarse.n_y);
  const Grid gf = Grid::make(P, fine.n_x, fine.n_y);
  const TraceSeries tc =
      run_linear(default_linear_init(gc, P, coarse.epsilon), gc, P, coarse);
  const TraceSeries tf =
      run_linear(default_linear_init(gf, P, fine.epsilon), gf, P, fine);
  const double wc = tc.w.back().cwiseAbs().maxCoeff();
  const double wf = tf.w.back().cwiseAbs().maxCoeff();
  CHECK(std::abs(wc - wf) / wf < 0.01);
}
