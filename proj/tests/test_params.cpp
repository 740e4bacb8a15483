#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "thickflame/params.hpp"

using namespace thickflame;

namespace {

// independent bisection oracle for theta_i r = 1 - e^{-r}
double bisect_r(double theta_i) {
  double lo = 1e-8, hi = 50.0;
  auto g = [&](double r) { return theta_i * r - 1.0 + std::exp(-r); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("solve_r reproduces the reference normalization") {
  CHECK(solve_r(0.75) == Catch::Approx(0.60586).margin(1e-5));
  // 50-digit evaluation of the root at theta_i = 0.75
  CHECK(solve_r(0.75) == Catch::Approx(0.60585997791900034018).epsilon(1e-14));
}

TEST_CASE("solve_r satisfies the defining equation to 1e-12") {
  for (double ti : {0.05, 0.2, 0.4, 0.5, 0.6, 0.75, 0.9, 0.99}) {
    const double r = solve_r(ti);
    CHECK(std::abs(ti * r - 1.0 + std::exp(-r)) < 1e-12);
  }
}

TEST_CASE("solve_r matches an independent bisection oracle") {
  CHECK(solve_r(0.5) == Catch::Approx(bisect_r(0.5)).margin(1e-10));
  CHECK(solve_r(0.85) == Catch::Approx(bisect_r(0.85)).margin(1e-10));
}

TEST_CASE("solve_r rejects theta_i outside (0,1)") {
  CHECK_THROWS_AS(solve_r(0.0), validation_error);
  CHECK_THROWS_AS(solve_r(1.0), validation_error);
  CHECK_THROWS_AS(solve_r(-0.3), validation_error);
  CHECK_THROWS_AS(solve_r(1.7), validation_error);
}

TEST_CASE("R(theta_i) is strictly decreasing") {
  double prev = solve_r(0.005);
  for (int i = 1; i < 100; ++i) {
    const double r = solve_r(0.005 + 0.99 * i / 100.0);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("round trip recovers theta_i") {
  for (double ti : {0.1, 0.33, 0.75, 0.95}) {
    const double r = solve_r(ti);
    CHECK((1.0 - std::exp(-r)) / r == Catch::Approx(ti).margin(1e-12));
  }
}

TEST_CASE("lambda_k") {
  CHECK(std::sqrt(lambda_k(100.0, 1)) == Catch::Approx(0.0628).margin(1e-4));
  CHECK(lambda_k(37.0, 0) == 0.0);
  CHECK(lambda_k(100.0, 2) == Catch::Approx(4.0 * lambda_k(100.0, 1)).epsilon(1e-15));
  CHECK_THROWS_AS(lambda_k(-1.0, 1), validation_error);
}

TEST_CASE("le_zero value and limits") {
  const double r = solve_r(0.75);
  // 50-digit evaluation of R/(2 e^R - R - 2) at R(0.75)
  CHECK(le_zero(r) == Catch::Approx(0.57167632482162867083).epsilon(1e-14));
  CHECK(le_zero(1e-8) == Catch::Approx(1.0).margin(1e-7));
  for (double rr = 0.1; rr <= 5.0; rr += 0.1) {
    CHECK(le_zero(rr) > 0.0);
    CHECK(le_zero(rr) < 1.0);
  }
}

TEST_CASE("Params derives R, the normalization and the mollifier width") {
  const Params p = Params::make(0.75, 0.3, 100.0);
  CHECK(p.r == Catch::Approx(0.60586).margin(1e-5));
  CHECK(p.a_norm == Catch::Approx(1.0 / p.r).epsilon(1e-15));
  CHECK(p.delta == Catch::Approx(p.r / 8.0).epsilon(1e-15));
  CHECK(2.0 * p.delta < p.r);
  CHECK(p.a_ext == 10.0);
  CHECK(p.b_ext == 10.0);
}

TEST_CASE("Params validation") {
  CHECK_THROWS_AS(Params::make(0.75, -0.3, 100.0), validation_error);
  CHECK_THROWS_AS(Params::make(0.75, 0.3, -5.0), validation_error);
  // mollifier support does not fit in (0, R)
  CHECK_THROWS_AS(Params::make(0.75, 0.3, 100.0, 0.4), validation_error);
  // right extent must exceed R + 2 delta
  CHECK_THROWS_AS(Params::make(0.75, 0.3, 100.0, -1.0, 10.0, 0.5), validation_error);
}
