#include "sta/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sta {

namespace {

Coords central_diff(const DriveSchedule& s, double t, double h) {
  const double lo = 0.0, hi = s.duration();
  // keep the stencil inside the domain near the ends
  double tc = std::clamp(t, lo + h, hi - h);
  const Coords p = s.coords(tc + h), m = s.coords(tc - h);
  return (1.0 / (2.0 * h)) * (p - m);
}

Coords central_diff2(const DriveSchedule& s, double t, double h) {
  const double lo = 0.0, hi = s.duration();
  double tc = std::clamp(t, lo + h, hi - h);
  const Coords p = s.coords(tc + h), c = s.coords(tc), m = s.coords(tc - h);
  return (1.0 / (h * h)) * ((p - c) - (c - m));
}

}  // namespace

Coords DriveSchedule::coords_dot(double t) const {
  const double h = 1e-5 * duration();
  // Richardson: (4 D(h/2) - D(h)) / 3 upgrades O(h^2) to O(h^4)
  const Coords d1 = central_diff(*this, t, h);
  const Coords d2 = central_diff(*this, t, 0.5 * h);
  return (1.0 / 3.0) * ((4.0 * d2) - d1);
}

Coords DriveSchedule::coords_ddot(double t) const {
  const double h = 1e-5 * duration();
  const Coords d1 = central_diff2(*this, t, h);
  const Coords d2 = central_diff2(*this, t, 0.5 * h);
  return (1.0 / 3.0) * ((4.0 * d2) - d1);
}

double DriveSchedule::scale() const {
  double m = 0.0;
  const int n = 101;
  for (int i = 0; i < n; ++i) {
    const double t = duration() * static_cast<double>(i) / (n - 1);
    m = std::max(m, coords(t).r());
  }
  return m;
}

void DriveSchedule::validate(int samples) const {
  const double T = duration();
  if (!(T > 0.0)) throw InvalidSchedule("schedule duration must be positive");
  const double h = 1e-5 * T;
  const double ref = std::max(scale() / T, 1e-300);
  for (int i = 0; i < samples; ++i) {
    const double t = std::clamp(T * static_cast<double>(i) / (samples - 1), h, T - h);
    const Coords fd = central_diff(*this, t, h);
    const Coords an = coords_dot(t);
    const Coords diff = an - fd;
    const double rel = diff.r() / std::max(ref, fd.r());
    if (rel > 1e-6) {
      std::ostringstream os;
      os << "schedule derivative inconsistent with finite differences at t=" << t
         << " (relative deviation " << rel << ")";
      throw InvalidSchedule(os.str());
    }
  }
}

LzSchedule::LzSchedule(double alpha, double x0, double T) : alpha_(alpha), x0_(x0), T_(T) {
  if (x0 == 0.0)
    throw InvalidSchedule("sweep requires a nonzero coupling x0; x0 = 0 makes the crossing an exact degeneracy");
  if (!(T > 0.0)) throw InvalidSchedule("sweep duration must be positive");
}

std::unique_ptr<DriveSchedule> lz_schedule(double alpha, double x0, double T) {
  return std::make_unique<LzSchedule>(alpha, x0, T);
}

ThetaDerivs theta_derivatives(const DriveSchedule& s, double t, double degeneracy_tol) {
  const Coords c = s.coords(t);
  const Coords cd = s.coords_dot(t);
  const Coords cdd = s.coords_ddot(t);

  const double rho = std::hypot(c.x, c.y);
  const double r2 = rho * rho + c.z * c.z;
  const double r = std::sqrt(r2);
  if (r <= degeneracy_tol || r == 0.0)
    throw DegenerateHamiltonian("theta_derivatives: drive radius below tolerance");
  if (rho < 1e-12 * r)
    throw PhaseBranchError("theta_derivatives: drive crosses the polar axis, theta_dot undefined");

  ThetaDerivs out;
  out.theta = std::atan2(rho, c.z);

  // rho' and rho'' from x, y
  const double rho_d = (c.x * cd.x + c.y * cd.y) / rho;
  const double rho_dd =
      (cd.x * cd.x + c.x * cdd.x + cd.y * cd.y + c.y * cdd.y - rho_d * rho_d) / rho;

  // theta = atan2(rho, z):  theta' = (rho' z - rho z') / r^2
  out.theta_dot = (rho_d * c.z - rho * cd.z) / r2;
  out.theta_ddot = (rho_dd * c.z - rho * cdd.z) / r2 -
                   2.0 * out.theta_dot * (rho * rho_d + c.z * cd.z) / r2;
  return out;
}

}  // namespace sta
