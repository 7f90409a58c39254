#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sta/spline.hpp"

using namespace sta;
using oracles::pi;

TEST_CASE("not-a-knot spline reproduces cubics exactly") {
  auto p = [](double x) { return ((x - 2.0) * x + 1.0) * x - 1.0; };
  auto dp = [](double x) { return (3.0 * x - 4.0) * x + 1.0; };
  const double x0 = 0.0, dx = 0.5;
  std::vector<double> y;
  for (int i = 0; i < 7; ++i) y.push_back(p(x0 + dx * i));
  const CubicSpline s(x0, dx, y);

  std::mt19937 gen(21);
  std::uniform_real_distribution<double> xs(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double x = xs(gen);
    CHECK(std::abs(s(x) - p(x)) < 1e-12);
    CHECK(std::abs(s.deriv(x) - dp(x)) < 1e-11);
  }
}

TEST_CASE("spline error on a sine stays at fourth order up to the ends") {
  const int n = 101;
  const double dx = 2.0 * pi / (n - 1);
  std::vector<double> y;
  for (int i = 0; i < n; ++i) y.push_back(std::sin(dx * i));
  const CubicSpline s(0.0, dx, y);

  double emax = 0.0, dmax = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = 2.0 * pi * i / 2000.0;
    emax = std::max(emax, std::abs(s(x) - std::sin(x)));
    dmax = std::max(dmax, std::abs(s.deriv(x) - std::cos(x)));
  }
  CHECK(emax < 1e-6);
  CHECK(dmax < 1e-4);
}

TEST_CASE("complex spline interpolates a phase factor componentwise") {
  const int n = 81;
  const double dx = 1.0 / (n - 1);
  std::vector<std::complex<double>> y;
  for (int i = 0; i < n; ++i) {
    const double x = dx * i;
    y.push_back(std::exp(std::complex<double>(0.0, 4.0 * x)));
  }
  const CubicSplineC s(0.0, dx, y);
  for (int i = 0; i <= 500; ++i) {
    const double x = i / 500.0;
    CHECK(std::abs(s(x) - std::exp(std::complex<double>(0.0, 4.0 * x))) < 1e-6);
  }
}

TEST_CASE("evaluation clamps to the sampled interval") {
  std::vector<double> y{1.0, 2.0, 3.0, 4.0};
  const CubicSpline s(0.0, 1.0, y);
  // linear data: the spline is the line itself inside
  CHECK(s(1.5) == doctest::Approx(2.5).epsilon(1e-13));
  // outside queries must not blow up (the frame interpolators clamp at the
  // trajectory ends where roundoff pushes t marginally outside)
  CHECK(std::isfinite(s(-0.5)));
  CHECK(std::isfinite(s(3.5)));
}
