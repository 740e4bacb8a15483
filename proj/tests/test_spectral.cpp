#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "thickflame/chebyshev.hpp"
#include "thickflame/fourier.hpp"
#include "thickflame/grid.hpp"
#include "thickflame/params.hpp"

using namespace thickflame;
using Catch::Approx;

TEST_CASE("cgl nodes") {
  const auto x2 = cgl_nodes(2);
  CHECK(x2[0] == 1.0);
  CHECK(x2[1] == 0.0);
  CHECK(x2[2] == -1.0);
  const auto x4 = cgl_nodes(4);
  CHECK(x4[1] == Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(x4[3] == Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-15));
  const auto x9 = cgl_nodes(9);
  for (int j = 0; j <= 9; ++j)
    CHECK(x9[j] == Approx(-x9[9 - j]).margin(1e-15));
  CHECK_THROWS_AS(cgl_nodes(1), validation_error);
}

TEST_CASE("first differentiation matrix row on three points") {
  // differentiating the quadratic Lagrange basis on (1, 0, -1) by hand gives
  // l0' = x + 1/2, l1' = -2x, l2' = x - 1/2, evaluated at x = 1
  const auto d = diff_matrix(2, 1);
  CHECK(d(0, 0) == Approx(1.5).epsilon(1e-14));
  CHECK(d(0, 1) == Approx(-2.0).epsilon(1e-14));
  CHECK(d(0, 2) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("differentiation is exact on polynomials") {
  const int n = 8;
  const auto x = cgl_nodes(n);
  const auto d1 = diff_matrix(n, 1);
  const auto d2 = diff_matrix(n, 2);
  Eigen::VectorXd p(n + 1), dp(n + 1), q(n + 1);
  for (int i = 0; i <= n; ++i) {
    p[i] = std::pow(x[i], 3);
    dp[i] = 3.0 * x[i] * x[i];
    q[i] = x[i] * x[i];
  }
  CHECK((d1 * p - dp).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((d2 * q - Eigen::VectorXd::Constant(n + 1, 2.0)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("row sums of d1 vanish") {
  for (int n : {8, 16, 32}) {
    const auto d1 = diff_matrix(n, 1);
    CHECK(d1.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("d2 agrees with d1 squared") {
  const int n = 16;
  const auto d1 = diff_matrix(n, 1);
  const auto d2 = diff_matrix(n, 2);
  const Eigen::MatrixXd dd = d1 * d1;
  CHECK((d2 - dd).norm() / dd.norm() < 1e-8);
}

TEST_CASE("spectral accuracy on the exponential") {
  auto err = [](int n) {
    const auto x = cgl_nodes(n);
    const auto d1 = diff_matrix(n, 1);
    Eigen::VectorXd f(n + 1);
    for (int i = 0; i <= n; ++i) f[i] = std::exp(x[i]);
    return (d1 * f - f).cwiseAbs().maxCoeff();  // d/dx e^x = e^x
  };
  const double e8 = err(8), e16 = err(16);
  CHECK(e16 < e8 * std::pow(0.5, 6));  // faster than any fixed power
  CHECK(err(32) < 1e-12);
}

TEST_CASE("complex exponential maps to a single mode") {
  FourierTransform ft(16);
  Eigen::VectorXcd u(16);
  for (int j = 0; j < 16; ++j)
    u[j] = std::exp(std::complex<double>(0.0, ft.y_node(j)));
  const auto uh = ft.to_modes_full(u);
  for (int k = 0; k < 16; ++k) {
    const double expect = (ft.wavenumber(k) == 1) ? 1.0 : 0.0;
    CHECK(std::abs(uh[k] - expect) < 1e-13);
  }
}

TEST_CASE("second y derivative via mode multipliers") {
  FourierTransform ft(32);
  Eigen::VectorXd u(32);
  for (int j = 0; j < 32; ++j) u[j] = std::sin(2.0 * ft.y_node(j));
  const auto dd = ft.dyy(u);
  for (int j = 0; j < 32; ++j)
    CHECK(dd[j] == Approx(-4.0 * u[j]).margin(1e-12));
}

TEST_CASE("round trip and conjugate symmetry on a random real field") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FourierTransform ft(64);
  Eigen::VectorXd u(64);
  for (auto& v : u.reshaped()) v = dist(rng);
  const auto back = ft.from_modes(ft.to_modes(u));
  CHECK((back - u).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::VectorXcd uc = u.cast<std::complex<double>>();
  const auto full = ft.to_modes_full(uc);
  for (int k = 1; k < 32; ++k)
    CHECK(std::abs(full[k] - std::conj(full[64 - k])) < 1e-13);
}

TEST_CASE("Parseval identity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FourierTransform ft(32);
  Eigen::VectorXcd u(32);
  for (auto& v : u.reshaped())
    v = std::complex<double>(dist(rng), dist(rng));
  const auto uh = ft.to_modes_full(u);
  CHECK(uh.squaredNorm() == Approx(u.squaredNorm() / 32.0).epsilon(1e-10));
}

TEST_CASE("transform length is validated") {
  FourierTransform ft(16);
  Eigen::VectorXd bad(15);
  bad.setZero();
  CHECK_THROWS_AS(ft.to_modes(bad), validation_error);
  CHECK_THROWS_AS(FourierTransform(9), validation_error);  // odd size
}

TEST_CASE("subdomain maps") {
  const Params p = Params::make(0.75, 0.3, 100.0);
  const Grid g = Grid::make(p, 16, 32);
  CHECK(g.map(1).xi_of_x(-1.0) == Approx(-p.a_ext));
  CHECK(g.map(1).xi_of_x(1.0) == Approx(0.0).margin(1e-15));
  CHECK(g.map(2).xi_of_x(-1.0) == Approx(0.0).margin(1e-15));
  CHECK(g.map(2).xi_of_x(1.0) == Approx(p.r));
  CHECK(g.map(3).xi_of_x(-1.0) == Approx(p.r));
  CHECK(g.map(3).xi_of_x(1.0) == Approx(p.b_ext));
  CHECK(g.map(1).jac() == Approx(p.a_ext / 2.0));
  CHECK(g.map(2).jac() == Approx(p.r / 2.0));
  CHECK(g.map(3).jac() == Approx((p.b_ext - p.r) / 2.0));
  // node 0 is the right end
  CHECK(g.xi_node(2, 0) == Approx(p.r));
  CHECK(g.xi_node(2, g.n_x) == Approx(0.0).margin(1e-15));
}

TEST_CASE("barycentric interpolation reproduces smooth samples") {
  const int n = 24;
  const auto x = cgl_nodes(n);
  const auto w = cgl_barycentric_weights(n);
  Eigen::VectorXd f(n + 1);
  for (int i = 0; i <= n; ++i) f[i] = std::sin(2.0 * x[i]);
  for (double xe : {-0.73, -0.2, 0.11, 0.64, 1.0})
    CHECK(barycentric_eval(x, w, f, xe) == Approx(std::sin(2.0 * xe)).margin(1e-12));
}
