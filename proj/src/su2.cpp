#include "sta/su2.hpp"

#include <algorithm>

namespace sta {

Sphere cart_to_sphere(const Coords& c) {
  Sphere s;
  const double rho = std::hypot(c.x, c.y);
  s.r = std::hypot(rho, c.z);
  if (s.r == 0.0) return s;  // theta = phi = 0 by convention
  s.theta = std::atan2(rho, c.z);
  if (rho == 0.0) return s;  // on the polar axis phi is undefined; use 0
  s.phi = std::atan2(c.y, c.x);
  if (s.phi < 0.0) s.phi += 2.0 * M_PI;
  return s;
}

Coords sphere_to_cart(const Sphere& s) {
  const double st = std::sin(s.theta);
  return {s.r * st * std::cos(s.phi), s.r * st * std::sin(s.phi), s.r * std::cos(s.theta)};
}

double Mat2::max_abs() const {
  return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

Mat2 operator+(const Mat2& m, const Mat2& n) { return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d}; }

Mat2 operator-(const Mat2& m, const Mat2& n) { return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d}; }

Mat2 operator*(const cplx& s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

Mat2 to_matrix(const Coords& c) {
  return {cplx(c.z, 0.0), cplx(c.x, -c.y), cplx(c.x, c.y), cplx(-c.z, 0.0)};
}

Coords to_coords(const Mat2& m) {
  return {0.5 * (m.c.real() + m.b.real()),
          0.5 * (m.c.imag() - m.b.imag()),
          0.5 * (m.a.real() - m.d.real())};
}

double unitarity_defect(const Mat2& u) {
  const Mat2 p = u * u.dagger();
  return (p - Mat2::identity()).max_abs();
}

State2 State2::normalized() const {
  const double n = norm();
  return {c1 / n, c2 / n};
}

cplx dot(const State2& a, const State2& b) { return std::conj(a.c1) * b.c1 + std::conj(a.c2) * b.c2; }

double fidelity(const State2& a, const State2& b) { return std::norm(dot(a, b)); }

State2 apply(const Mat2& m, const State2& v) {
  return {m.a * v.c1 + m.b * v.c2, m.c * v.c1 + m.d * v.c2};
}

Eigensystem eigensystem(const Coords& c, double degeneracy_tol) {
  const Sphere s = cart_to_sphere(c);
  if (s.r <= degeneracy_tol || s.r == 0.0)
    throw DegenerateHamiltonian("eigensystem: spectral gap " + std::to_string(2.0 * s.r) +
                                " below tolerance, eigenbasis undefined");
  const double ch = std::cos(0.5 * s.theta);
  const double sh = std::sin(0.5 * s.theta);
  const cplx eip(std::cos(s.phi), std::sin(s.phi));
  Eigensystem e;
  e.value_up = s.r;
  e.up = {cplx(ch, 0.0), sh * eip};
  e.dn = {-sh * std::conj(eip), cplx(ch, 0.0)};
  return e;
}

Mat2 exp_pauli(const Coords& v, double dt) {
  const double r = v.r();
  const double a = r * dt;
  double cs, snc;  // cos(r dt) and sin(r dt)/r
  if (std::abs(a) < 1e-8) {
    // series branch, exact to well below double precision for |a| < 1e-8
    cs = 1.0 - 0.5 * a * a;
    snc = dt * (1.0 - a * a / 6.0);
  } else {
    cs = std::cos(a);
    snc = std::sin(a) / r;
  }
  return {cplx(cs, -snc * v.z), cplx(-snc * v.y, -snc * v.x),
          cplx(snc * v.y, -snc * v.x), cplx(cs, snc * v.z)};
}

}  // namespace sta
