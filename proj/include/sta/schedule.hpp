#pragma once

#include <memory>

#include "sta/su2.hpp"

namespace sta {

// Time-dependent drive (X(t), Y(t), Z(t)) on [0, duration()] with first and
// second derivatives. Subclasses should supply analytic derivatives when they
// have them; the base-class fallback differentiates coords() numerically
// (Richardson-refined central differences at h = 1e-5 * duration).
class DriveSchedule {
 public:
  virtual ~DriveSchedule() = default;

  virtual double duration() const = 0;
  virtual Coords coords(double t) const = 0;
  virtual Coords coords_dot(double t) const;
  virtual Coords coords_ddot(double t) const;

  // Largest radius over a coarse scan; the reference energy scale used for
  // degeneracy tolerances.
  double scale() const;

  // Checks the supplied derivatives against central differences of coords()
  // (relative agreement 1e-6 at h = 1e-5 * duration). Throws InvalidSchedule.
  void validate(int samples = 33) const;
};

// Linear sweep through resonance at constant coupling:
// coords(t) = (x0, 0, alpha * (t - T/2)).
class LzSchedule final : public DriveSchedule {
 public:
  LzSchedule(double alpha, double x0, double T);

  double duration() const override { return T_; }
  Coords coords(double t) const override { return {x0_, 0.0, alpha_ * (t - 0.5 * T_)}; }
  Coords coords_dot(double) const override { return {0.0, 0.0, alpha_}; }
  Coords coords_ddot(double) const override { return {0.0, 0.0, 0.0}; }

  double alpha() const { return alpha_; }
  double x0() const { return x0_; }

 private:
  double alpha_, x0_, T_;
};

std::unique_ptr<DriveSchedule> lz_schedule(double alpha, double x0, double T);

struct ThetaDerivs {
  double theta = 0.0;
  double theta_dot = 0.0;
  double theta_ddot = 0.0;
};

// Polar angle of the drive vector and its time derivatives, by the chain rule
// on theta = atan2(sqrt(x^2 + y^2), z). Throws DegenerateHamiltonian when the
// radius is below tolerance and PhaseBranchError when the path crosses the
// polar axis (x^2 + y^2 -> 0 with z != 0), where the angle loses smoothness.
ThetaDerivs theta_derivatives(const DriveSchedule& s, double t, double degeneracy_tol = 0.0);

}  // namespace sta
