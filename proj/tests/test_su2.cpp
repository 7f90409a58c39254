#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sta/su2.hpp"

using namespace sta;
using oracles::pi;

namespace {
Coords random_coords(std::mt19937& gen, double scale = 3.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(gen), u(gen), u(gen)};
}
}  // namespace

TEST_CASE("spherical coordinates hit the axis and sweep examples") {
  const Sphere a = cart_to_sphere({0.0, 0.0, 1.0});
  CHECK(a.r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.theta == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.phi == 0.0);

  const Sphere b = cart_to_sphere({1.0, 0.0, 0.0});
  CHECK(b.r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.theta == doctest::Approx(0.5 * pi).epsilon(1e-15));
  CHECK(b.phi == 0.0);

  const Sphere c = cart_to_sphere({1.0, 0.0, 10.0});
  CHECK(c.r == doctest::Approx(std::sqrt(101.0)).epsilon(1e-14));
  CHECK(c.theta == doctest::Approx(0.09966865249116202).epsilon(1e-14));
  CHECK(c.phi == 0.0);

  CHECK(cart_to_sphere({0.0, 1.0, 0.0}).phi == doctest::Approx(0.5 * pi).epsilon(1e-15));
  CHECK(cart_to_sphere({-1.0, 0.0, 0.0}).phi == doctest::Approx(pi).epsilon(1e-15));
  // phi stays in [0, 2 pi)
  CHECK(cart_to_sphere({0.0, -1.0, 0.0}).phi == doctest::Approx(1.5 * pi).epsilon(1e-15));
}

TEST_CASE("spherical round trips are exact to 1e-12") {
  std::mt19937 gen(11);
  for (int i = 0; i < 200; ++i) {
    const Coords c = random_coords(gen);
    const Coords back = sphere_to_cart(cart_to_sphere(c));
    CHECK(std::abs(back.x - c.x) < 1e-12);
    CHECK(std::abs(back.y - c.y) < 1e-12);
    CHECK(std::abs(back.z - c.z) < 1e-12);

    Sphere s = cart_to_sphere(c);
    const Sphere s2 = cart_to_sphere(sphere_to_cart(s));
    CHECK(std::abs(s2.r - s.r) < 1e-12);
    CHECK(std::abs(s2.theta - s.theta) < 1e-12);
    CHECK(std::abs(s2.phi - s.phi) < 1e-12);
  }
}

TEST_CASE("matrix conversions round-trip and lay out entries as written") {
  const Coords c{0.3, -1.2, 2.5};
  const Mat2 m = to_matrix(c);
  CHECK(m.a == cplx(2.5, 0.0));
  CHECK(m.b == cplx(0.3, 1.2));
  CHECK(m.c == cplx(0.3, -1.2));
  CHECK(m.d == cplx(-2.5, 0.0));

  std::mt19937 gen(12);
  for (int i = 0; i < 100; ++i) {
    const Coords v = random_coords(gen);
    const Coords back = to_coords(to_matrix(v));
    CHECK(std::abs(back.x - v.x) < 1e-15);
    CHECK(std::abs(back.y - v.y) < 1e-15);
    CHECK(std::abs(back.z - v.z) < 1e-15);
  }
}

TEST_CASE("eigensystem on the axes matches the closed forms") {
  const Eigensystem ez = eigensystem({0.0, 0.0, 1.0});
  CHECK(ez.value_up == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(ez.up.c1 - 1.0) < 1e-15);
  CHECK(std::abs(ez.up.c2) < 1e-15);
  CHECK(std::abs(ez.dn.c2 - 1.0) < 1e-15);

  const Eigensystem ex = eigensystem({1.0, 0.0, 0.0});
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ex.up.c1 - s) < 1e-14);
  CHECK(std::abs(ex.up.c2 - s) < 1e-14);
  CHECK(std::abs(ex.dn.c1 + s) < 1e-14);
  CHECK(std::abs(ex.dn.c2 - s) < 1e-14);
}

TEST_CASE("eigensystem of the detuned drive reproduces the tabulated ground state") {
  const Eigensystem e = eigensystem({1.0, 0.0, 10.0});
  CHECK(e.value_up == doctest::Approx(std::sqrt(101.0)).epsilon(1e-12));
  // reference components from the half-angle forms
  const State2 ref{cplx(-0.04981370188015976, 0.0), cplx(0.998758526924799, 0.0)};
  CHECK(fidelity(e.dn, ref) > 1.0 - 1e-12);
  // four-digit tabulated approximation, gauge-free comparison
  const State2 coarse{cplx(-0.049845, 0.0), cplx(0.998757, 0.0)};
  CHECK(fidelity(e.dn, coarse.normalized()) > 1.0 - 1e-5);
}

TEST_CASE("eigenpairs satisfy the defining relations on random drives") {
  std::mt19937 gen(13);
  for (int i = 0; i < 200; ++i) {
    const Coords c = random_coords(gen);
    if (c.r() < 1e-3) continue;
    const Eigensystem e = eigensystem(c);
    CHECK(e.value_up == doctest::Approx(c.r()).epsilon(1e-12));
    const Mat2 h = to_matrix(c);
    const State2 ru = apply(h, e.up) - e.value_up * e.up;
    const State2 rd = apply(h, e.dn) + e.value_up * e.dn;
    CHECK(ru.norm() < 1e-12 * c.r());
    CHECK(rd.norm() < 1e-12 * c.r());
    CHECK(std::abs(dot(e.up, e.dn)) < 1e-12);
    CHECK(std::abs(e.up.norm() - 1.0) < 1e-13);
    CHECK(std::abs(e.dn.norm() - 1.0) < 1e-13);
  }
}

TEST_CASE("degenerate drives are rejected") {
  CHECK_THROWS_AS(eigensystem({0.0, 0.0, 0.0}), DegenerateHamiltonian);
  CHECK_THROWS_AS(eigensystem({1e-13, 0.0, 0.0}, 1e-10), DegenerateHamiltonian);
  CHECK_NOTHROW(eigensystem({1e-13, 0.0, 0.0}));
}

TEST_CASE("pauli exponential stays exactly unitary") {
  std::mt19937 gen(14);
  std::uniform_real_distribution<double> dts(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const Coords v = random_coords(gen, 10.0);
    const Mat2 u = exp_pauli(v, dts(gen));
    CHECK(unitarity_defect(u) < 1e-12);
  }
  CHECK(unitarity_defect(exp_pauli({0.0, 0.0, 0.0}, 1.0)) < 1e-15);
}

TEST_CASE("pauli exponential matches the closed forms") {
  // quarter turn about x: exp(-i (pi/2) sx) = -i sx
  const Mat2 u = exp_pauli({0.5 * pi, 0.0, 0.0}, 1.0);
  CHECK(std::abs(u.a) < 1e-15);
  CHECK(std::abs(u.b - cplx(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(u.c - cplx(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(u.d) < 1e-15);

  // tiny rotation falls back to the series branch smoothly
  const Coords v{1e-9, 2e-9, -1e-9};
  const Mat2 w = exp_pauli(v, 1e-3);
  const Mat2 lin = Mat2::identity() - cplx(0.0, 1e-3) * to_matrix(v);
  CHECK((w - lin).max_abs() < 1e-20);
}

TEST_CASE("state helpers behave like the inner product they wrap") {
  const State2 a{cplx(0.6, 0.0), cplx(0.0, 0.8)};
  const State2 b{cplx(0.0, 1.0), cplx(0.0, 0.0)};
  CHECK(std::abs(a.norm() - 1.0) < 1e-15);
  CHECK(std::abs(dot(a, b) - std::conj(dot(b, a))) < 1e-15);
  CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(b, State2{cplx(0.0, 0.0), cplx(1.0, 0.0)}) == doctest::Approx(0.0));
  const Mat2 sx = to_matrix({1.0, 0.0, 0.0});
  const State2 flipped = apply(sx, b);
  CHECK(std::abs(flipped.c2 - cplx(0.0, 1.0)) < 1e-15);
}
