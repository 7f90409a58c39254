#pragma once

#include <cmath>
#include <complex>

#include "sta/errors.hpp"

namespace sta {

using cplx = std::complex<double>;

// hbar = 1 across the two-level stack. The 1-D grid solver keeps hbar and the
// mass as explicit parameters instead.
inline constexpr double hbar = 1.0;

// Coefficients of H = x*sigma_x + y*sigma_y + z*sigma_z, i.e. any traceless
// Hermitian 2x2 operator. The spectrum is +-r.
struct Coords {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double r() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Coords operator+(const Coords& a, const Coords& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Coords operator-(const Coords& a, const Coords& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Coords operator*(double s, const Coords& a) {
  return {s * a.x, s * a.y, s * a.z};
}

// x = r sin(theta) cos(phi), y = r sin(theta) sin(phi), z = r cos(theta);
// theta in [0, pi], phi in [0, 2*pi).
struct Sphere {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

// phi := 0 on the polar axis (x = y = 0) and for r = 0 (theta := 0 too).
Sphere cart_to_sphere(const Coords& c);
Coords sphere_to_cart(const Sphere& s);

// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
  cplx a{}, b{}, c{}, d{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  Mat2 dagger() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  double max_abs() const;
};

Mat2 operator*(const Mat2& m, const Mat2& n);
Mat2 operator+(const Mat2& m, const Mat2& n);
Mat2 operator-(const Mat2& m, const Mat2& n);
Mat2 operator*(const cplx& s, const Mat2& m);

Mat2 to_matrix(const Coords& c);
// Traceless-Hermitian projection of m, read off componentwise. Exact for
// inputs that are already traceless Hermitian; used deliberately on
// finite-difference products whose anti-Hermitian residue is noise.
Coords to_coords(const Mat2& m);

// max-abs entry of U*Adj(U) - 1.
double unitarity_defect(const Mat2& u);

// Two-level state (c1, c2) in the bare basis.
struct State2 {
  cplx c1{}, c2{};

  double norm() const { return std::sqrt(std::norm(c1) + std::norm(c2)); }
  State2 normalized() const;
};

inline State2 operator*(const cplx& s, const State2& v) { return {s * v.c1, s * v.c2}; }
inline State2 operator-(const State2& u, const State2& v) { return {u.c1 - v.c1, u.c2 - v.c2}; }
inline State2 operator+(const State2& u, const State2& v) { return {u.c1 + v.c1, u.c2 + v.c2}; }

// <a|b>
cplx dot(const State2& a, const State2& b);
// |<a|b>|^2
double fidelity(const State2& a, const State2& b);
State2 apply(const Mat2& m, const State2& v);

// Eigen-decomposition of x*sigma_x + y*sigma_y + z*sigma_z.
// Gauge: up = (cos(theta/2), e^{i phi} sin(theta/2)),
//        dn = (-e^{-i phi} sin(theta/2), cos(theta/2)),
// which is smooth away from the south pole and real whenever y = 0, phi = 0.
struct Eigensystem {
  double value_up = 0.0;  // eigenvalue of |up>; |dn> has -value_up
  State2 up, dn;
};

// Throws DegenerateHamiltonian when r <= degeneracy_tol (an exactly vanishing
// radius always throws).
Eigensystem eigensystem(const Coords& c, double degeneracy_tol = 0.0);

// exp(-i dt (v . sigma)) in closed form: cos(r dt) - i sin(r dt) (n . sigma).
// Exactly unitary for every dt, including r -> 0 (series branch).
Mat2 exp_pauli(const Coords& v, double dt);

}  // namespace sta
