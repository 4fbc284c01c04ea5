#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "infodesign/numerics.hpp"

using namespace infodesign::numerics;

TEST_CASE("power value function round trips eval and inverse") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(0.1, 0.95);
  std::uniform_real_distribution<double> beta(0.25, 4.0);
  std::uniform_real_distribution<double> z(0.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    PowerValue v(alpha(rng), beta(rng));
    const double value = z(rng);
    CHECK(std::abs(v.inverse(v.eval(value)) - value) <= 1e-9 * (1.0 + value));
  }
  PowerValue sqrt_v(0.5, 1.0);
  CHECK(sqrt_v.eval(0.0) == 0.0);
  CHECK(sqrt_v.eval(9.0) == doctest::Approx(3.0));
  CHECK(sqrt_v.inverse(3.0) == doctest::Approx(9.0));
}

TEST_CASE("power derivative matches a central finite difference") {
  PowerValue v(0.37, 1.7);
  const double h = 1e-6;
  for (double z = 0.1; z <= 100.0; z *= 1.7) {
    const double fd = (v.eval(z + h) - v.eval(z - h)) / (2.0 * h);
    CHECK(std::abs(v.derivative(z) - fd) <= 1e-6 * std::abs(fd));
  }
  CHECK(std::isinf(v.derivative(0.0)));
  CHECK(std::isinf(v.derivative_at_zero()));
  CHECK(v.derivative_inverse(v.derivative(2.5)) == doctest::Approx(2.5));
}

TEST_CASE("power constructor validates parameters") {
  CHECK_THROWS_AS(PowerValue(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerValue(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerValue(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerValue(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("solve_increasing finds bracketed roots") {
  CHECK(solve_increasing([](double x) { return x - 1.0; }, 0.0, 2.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // sqrt(x) = 0.6 x has the closed-form root (1/0.6)^2 = 25/9.
  CHECK(solve_increasing([](double x) { return std::sqrt(x) - 0.6 * x; }, 1.0, 10.0) ==
        doctest::Approx(25.0 / 9.0).epsilon(1e-10));
  CHECK(solve_increasing([](double x) { return x * x - 2.0; }, 0.0, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("solve_increasing rejects bad brackets") {
  CHECK_THROWS_AS(solve_increasing([](double x) { return x + 5.0; }, 0.0, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(
      solve_increasing([](double) { return std::nan(""); }, 0.0, 1.0),
      std::domain_error);
}

TEST_CASE("solve_v_ratio matches the power closed form") {
  PowerValue v(0.5, 1.0);
  CHECK(solve_v_ratio(v, 3.0 / 5.0) == doctest::Approx(25.0 / 9.0).epsilon(1e-10));
  CHECK(solve_v_ratio(v, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(solve_v_ratio(v, 0.5) == doctest::Approx(4.0).epsilon(1e-10));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha(0.2, 0.9);
  std::uniform_real_distribution<double> beta(0.3, 3.0);
  std::uniform_real_distribution<double> target(0.05, 5.0);
  for (int i = 0; i < 100; ++i) {
    PowerValue w(alpha(rng), beta(rng));
    const double t = target(rng);
    // z* = (beta / target)^(1 / (1 - alpha))
    const double closed = std::pow(w.beta() / t, 1.0 / (1.0 - w.alpha()));
    const double solved = solve_v_ratio(w, t);
    CHECK(std::abs(solved - closed) <= 1e-8 * (1.0 + closed));
  }
}

TEST_CASE("solve_v_ratio rejects out-of-range targets") {
  PowerValue v(0.5, 1.0);
  CHECK_THROWS_AS(solve_v_ratio(v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_v_ratio(v, -2.0), std::invalid_argument);
}

TEST_CASE("v(z)/z is strictly decreasing for the power family") {
  PowerValue v(0.5, 1.0);
  double previous = v.eval(1e-3) / 1e-3;
  for (double z = 1e-2; z <= 1e4; z *= 2.0) {
    const double ratio = v.eval(z) / z;
    CHECK(ratio < previous);
    previous = ratio;
  }
}

TEST_CASE("solve_tangent_np examples") {
  PowerValue v(0.5, 1.0);
  // v = sqrt, r = 5, c = 1: substitute u = sqrt(5 - x), 3u^2 - 2u - 5 = 0.
  CHECK(solve_tangent_np(v, 5.0, 1.0) == doctest::Approx(20.0 / 9.0).epsilon(1e-10));
  // r = 7, c = 1.6: 3u^2 - 3.2u - 7 = 0, positive root.
  const double u = (3.2 + std::sqrt(3.2 * 3.2 + 4.0 * 3.0 * 7.0)) / 6.0;
  CHECK(solve_tangent_np(v, 7.0, 1.6) == doctest::Approx(7.0 - u * u).epsilon(1e-10));
  // At x = 0 the equation reads v(r) = c.
  CHECK(solve_tangent_np(v, 4.0, 2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(solve_tangent_np(v, 1.0, 5.0), std::domain_error);
}

TEST_CASE("solve_tangent_np yields a true tangency line") {
  PowerValue v(0.5, 1.0);
  const double r = 5.0;
  const double c = 1.0;
  const double xa = solve_tangent_np(v, r, c);
  const double residual = v.eval(r - xa) - xa * v.derivative(r - xa) - c;
  CHECK(std::abs(residual) <= 1e-9);
  // The line through (xa, f(xa)) with slope c stays above f(x) = x v(r - x).
  const double intercept = xa * v.eval(r - xa) - c * xa;
  for (int i = 0; i <= 100; ++i) {
    const double x = r * static_cast<double>(i) / 100.0;
    const double f = x * v.eval(r - x);
    const double g = c * x + intercept;
    CHECK(g >= f - 1e-9);
  }
}

TEST_CASE("solve_equal_split examples") {
  PowerValue v(0.5, 1.0);
  // x = sqrt(5 - x) - 1  =>  x^2 + 3x - 4 = 0, positive root 1.
  CHECK(solve_equal_split(v, 5.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  // x = sqrt(7 - x) - 1.6  =>  x^2 + 4.2x - 4.44 = 0, positive root.
  const double root = (-4.2 + std::sqrt(4.2 * 4.2 + 4.0 * 4.44)) / 2.0;
  CHECK(solve_equal_split(v, 7.0, 1.6) == doctest::Approx(root).epsilon(1e-10));
  CHECK(solve_equal_split(v, 4.0, 2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(solve_equal_split(v, 1.0, 2.0), std::domain_error);
}

TEST_CASE("solvers are deterministic") {
  PowerValue v(0.5, 1.0);
  CHECK(solve_tangent_np(v, 7.0, 1.6) == solve_tangent_np(v, 7.0, 1.6));
  CHECK(solve_equal_split(v, 7.0, 1.6) == solve_equal_split(v, 7.0, 1.6));
  CHECK(solve_v_ratio(v, 0.37) == solve_v_ratio(v, 0.37));
}
