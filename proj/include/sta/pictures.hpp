#pragma once

#include <functional>
#include <memory>

#include "sta/frames.hpp"
#include "sta/propagate.hpp"

namespace sta {

// A picture change |psi_I> = Adj(U)|psi_S> with its generator K = i hbar Udot Adj(U).
struct FrameGenerator {
  std::function<Mat2(double)> U;
  std::function<Mat2(double)> K;
};

// Adj(U) (H - K) U at one time.
Mat2 ip_transform(const Mat2& h_s, const Mat2& u, const Mat2& k);
// Same, lifted to drive-coordinate functions (the transform of a traceless
// Hermitian drive is traceless Hermitian again).
HamiltonianFn ip_transform(const HamiltonianFn& h_s, const FrameGenerator& frame);

// The tracked eigenbasis as a picture, U = A_j.
FrameGenerator adiabatic_frame(const AdiabaticFrame& f);
// The product picture U = A0 A1; its generator is K0 + A0 K1 Adj(A0) exactly.
FrameGenerator product_frame(const AdiabaticFrame& f0, const AdiabaticFrame& f1);

// Cumulative integral F(t) = int_0^t f, built once by adaptive panel
// bisection (5-point Gauss per panel) and evaluated by prefix sums.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(const std::function<double(double)>& f, double t0, double t1,
                     double panel_tol = 1e-13);
  double operator()(double t) const;

 private:
  struct Panel {
    double a, b, value;  // integral over [a, b]
  };
  std::function<double(double)> f_;
  std::vector<double> edges_, prefix_;
};

// Rotation about the z axis that removes the sigma_y component of
// H0 + K0 for Y == 0 schedules:
//   phi = arctan(hbar Theta0_dot / (2 X0)),  continuous branch from t = 0,
//   transformed drive = (P, 0, Z0 - hbar phi_dot / 2),  P = sqrt(X0^2 + (hbar Theta0_dot / 2)^2).
// phi_dot comes from the analytic chain rule through Theta0_dot and Theta0_ddot.
class ZRotationShortcut {
 public:
  explicit ZRotationShortcut(const DriveSchedule& s);

  double phi(double t) const;
  double phi_dot(double t) const;
  double p(double t) const;             // transformed coupling magnitude
  Coords shortcut_coords(double t) const;
  HamiltonianFn shortcut() const;       // the transformed drive as a function
  FrameGenerator frame() const;         // U_z = diag(e^{-i phi/2}, e^{+i phi/2})

 private:
  const DriveSchedule* s_;
  double degeneracy_tol_ = 0.0;
};

ZRotationShortcut z_rotation_shortcut(const DriveSchedule& s);

// Driven-atom realizations. The rotating-frame drive (X0, Y0=0, Z0) maps to a
// lab frame with Rabi coupling Omega_R = 2 X0 / hbar, detuning
// Delta = -2 Z0 / hbar, field frequency omega = omega0 - Delta, and
// accumulated phase theta(t) = int_0^t omega. The lab Hamiltonians keep the
// constant +-hbar omega0 / 2 diagonal; all chirp lives in theta.
struct LabFrame {
  double omega0 = 0.0;
  HamiltonianFn h;       // lab drive in bare coordinates
  FrameGenerator frame;  // the rotating picture: U = diag(e^{+i theta/2}, e^{-i theta/2})
  std::function<double(double)> theta;
};

// Plain coupling: off-diagonal (hbar/2) Omega_R e^{i theta}.
LabFrame rwa_lab_frame(const DriveSchedule& s, double omega0);
// Two quadrature fields: off-diagonal (hbar/2)(Omega_R - i Theta0_dot) e^{i theta}.
LabFrame cd_lab_frame(const DriveSchedule& s, double omega0);
// Correction alone at fixed resonant frequency: off-diagonal
// -(i hbar/2) Theta0_dot e^{i omega0 t}.
LabFrame resonant_cd_only(const DriveSchedule& s, double omega0);
// Correction alone with the chirped frequency kept on the diagonal.
LabFrame chirped_cd_only(const DriveSchedule& s, double omega0);

}  // namespace sta
