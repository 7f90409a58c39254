#include "sta/pictures.hpp"

#include <algorithm>
#include <cmath>

namespace sta {

namespace {

// 5-point Gauss-Legendre on [a, b]
double gl5(const std::function<double(double)>& f, double a, double b) {
  static constexpr double xn[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
  static constexpr double wn[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                   0.4786286704993665, 0.2369268850561891};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += wn[i] * f(c + h * xn[i]);
  return s * h;
}

}  // namespace

Mat2 ip_transform(const Mat2& h_s, const Mat2& u, const Mat2& k) {
  return u.dagger() * (h_s - k) * u;
}

HamiltonianFn ip_transform(const HamiltonianFn& h_s, const FrameGenerator& frame) {
  return [h_s, u = frame.U, k = frame.K](double t) {
    return to_coords(ip_transform(to_matrix(h_s(t)), u(t), k(t)));
  };
}

FrameGenerator adiabatic_frame(const AdiabaticFrame& f) {
  FrameGenerator g;
  g.U = [&f](double t) { return f.basis_at(t); };
  g.K = [&f](double t) { return to_matrix(f.k_at(t)); };
  return g;
}

FrameGenerator product_frame(const AdiabaticFrame& f0, const AdiabaticFrame& f1) {
  FrameGenerator g;
  g.U = [&f0, &f1](double t) { return f0.basis_at(t) * f1.basis_at(t); };
  // i hbar d(A0 A1)/dt Adj(A0 A1) = K0 + A0 K1 Adj(A0)
  const CoordTrack t1 = cd_term_1(f0, f1);
  g.K = [&f0, t1](double t) { return to_matrix(f0.k_at(t) + t1(t)); };
  return g;
}

CumulativeIntegral::CumulativeIntegral(const std::function<double(double)>& f, double t0, double t1,
                                       double panel_tol)
    : f_(f) {
  struct Item {
    double a, b;
    int depth;
  };
  std::vector<Panel> panels;
  std::vector<Item> stack{{t0, t1, 0}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const double whole = gl5(f_, it.a, it.b);
    const double m = 0.5 * (it.a + it.b);
    const double split = gl5(f_, it.a, m) + gl5(f_, m, it.b);
    if (std::abs(whole - split) <= panel_tol * (1.0 + std::abs(split)) || it.depth >= 40) {
      panels.push_back({it.a, m, gl5(f_, it.a, m)});
      panels.push_back({m, it.b, gl5(f_, m, it.b)});
    } else {
      stack.push_back({m, it.b, it.depth + 1});
      stack.push_back({it.a, m, it.depth + 1});
    }
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  edges_.reserve(panels.size() + 1);
  prefix_.reserve(panels.size() + 1);
  edges_.push_back(t0);
  prefix_.push_back(0.0);
  for (const Panel& p : panels) {
    edges_.push_back(p.b);
    prefix_.push_back(prefix_.back() + p.value);
  }
}

double CumulativeIntegral::operator()(double t) const {
  const double tc = std::clamp(t, edges_.front(), edges_.back());
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), tc);
  const std::size_t i = static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(it - edges_.begin() - 1, 0,
                                 static_cast<std::ptrdiff_t>(edges_.size()) - 2));
  return prefix_[i] + gl5(f_, edges_[i], tc);
}

ZRotationShortcut::ZRotationShortcut(const DriveSchedule& s) : s_(&s) {
  const double sc = s.scale();
  degeneracy_tol_ = 1e-12 * sc;
  const int n = 1001;
  for (int i = 0; i < n; ++i) {
    const double t = s.duration() * static_cast<double>(i) / (n - 1);
    const Coords c = s.coords(t);
    if (std::abs(c.y) > 1e-12 * sc)
      throw InvalidSchedule("z-rotation shortcut requires a drive with no sigma_y component");
    if (c.x <= 0.0)
      throw PhaseBranchError(
          "z-rotation shortcut: coupling X crosses zero, the rotation angle leaves its branch");
  }
}

double ZRotationShortcut::phi(double t) const {
  const ThetaDerivs th = theta_derivatives(*s_, t, degeneracy_tol_);
  return std::atan2(0.5 * hbar * th.theta_dot, s_->coords(t).x);
}

double ZRotationShortcut::phi_dot(double t) const {
  const ThetaDerivs th = theta_derivatives(*s_, t, degeneracy_tol_);
  const double x = s_->coords(t).x, xd = s_->coords_dot(t).x;
  const double u = 0.5 * hbar * th.theta_dot, ud = 0.5 * hbar * th.theta_ddot;
  return (ud * x - u * xd) / (x * x + u * u);
}

double ZRotationShortcut::p(double t) const {
  const ThetaDerivs th = theta_derivatives(*s_, t, degeneracy_tol_);
  return std::hypot(s_->coords(t).x, 0.5 * hbar * th.theta_dot);
}

Coords ZRotationShortcut::shortcut_coords(double t) const {
  return {p(t), 0.0, s_->coords(t).z - 0.5 * hbar * phi_dot(t)};
}

HamiltonianFn ZRotationShortcut::shortcut() const {
  return [this](double t) { return shortcut_coords(t); };
}

FrameGenerator ZRotationShortcut::frame() const {
  FrameGenerator g;
  g.U = [this](double t) {
    const double ph = 0.5 * phi(t);
    return Mat2{cplx(std::cos(ph), -std::sin(ph)), 0.0, 0.0, cplx(std::cos(ph), std::sin(ph))};
  };
  g.K = [this](double t) { return to_matrix({0.0, 0.0, 0.5 * hbar * phi_dot(t)}); };
  return g;
}

ZRotationShortcut z_rotation_shortcut(const DriveSchedule& s) { return ZRotationShortcut(s); }

namespace {

// shared construction of the rotating picture for a frequency profile
FrameGenerator rotating_picture(std::function<double(double)> omega,
                                std::function<double(double)> theta) {
  FrameGenerator g;
  g.U = [theta](double t) {
    const double th = 0.5 * theta(t);
    return Mat2{cplx(std::cos(th), std::sin(th)), 0.0, 0.0, cplx(std::cos(th), -std::sin(th))};
  };
  g.K = [omega](double t) { return to_matrix({0.0, 0.0, -0.5 * hbar * omega(t)}); };
  return g;
}

std::function<double(double)> field_frequency(const DriveSchedule& s, double omega0) {
  // detuning Delta = -2 Z0 / hbar, so omega = omega0 + 2 Z0 / hbar
  auto omega = [&s, omega0](double t) { return omega0 + 2.0 * s.coords(t).z / hbar; };
  const int n = 1001;
  for (int i = 0; i < n; ++i) {
    const double t = s.duration() * static_cast<double>(i) / (n - 1);
    if (omega(t) <= 0.0)
      throw InvalidSchedule("lab frame requires a positive field frequency over the whole run");
  }
  return omega;
}

}  // namespace

LabFrame rwa_lab_frame(const DriveSchedule& s, double omega0) {
  LabFrame lf;
  lf.omega0 = omega0;
  auto omega = field_frequency(s, omega0);
  CumulativeIntegral th(omega, 0.0, s.duration());
  lf.theta = [th](double t) { return th(t); };
  lf.h = [&s, omega0, th](double t) {
    const double om_r = 2.0 * s.coords(t).x / hbar;
    const double theta = th(t);
    return Coords{0.5 * hbar * om_r * std::cos(theta), -0.5 * hbar * om_r * std::sin(theta),
                  -0.5 * hbar * omega0};
  };
  lf.frame = rotating_picture(omega, lf.theta);
  return lf;
}

LabFrame cd_lab_frame(const DriveSchedule& s, double omega0) {
  LabFrame lf;
  lf.omega0 = omega0;
  auto omega = field_frequency(s, omega0);
  CumulativeIntegral th(omega, 0.0, s.duration());
  lf.theta = [th](double t) { return th(t); };
  const double tol = 1e-12 * s.scale();
  lf.h = [&s, omega0, th, tol](double t) {
    const double om_r = 2.0 * s.coords(t).x / hbar;
    const double td = theta_derivatives(s, t, tol).theta_dot;
    const double theta = th(t);
    const double c = std::cos(theta), sn = std::sin(theta);
    return Coords{0.5 * hbar * (om_r * c + td * sn), 0.5 * hbar * (td * c - om_r * sn),
                  -0.5 * hbar * omega0};
  };
  lf.frame = rotating_picture(omega, lf.theta);
  return lf;
}

LabFrame resonant_cd_only(const DriveSchedule& s, double omega0) {
  LabFrame lf;
  lf.omega0 = omega0;
  lf.theta = [omega0](double t) { return omega0 * t; };
  const double tol = 1e-12 * s.scale();
  lf.h = [&s, omega0, tol](double t) {
    const double td = theta_derivatives(s, t, tol).theta_dot;
    return Coords{0.5 * hbar * td * std::sin(omega0 * t), 0.5 * hbar * td * std::cos(omega0 * t),
                  -0.5 * hbar * omega0};
  };
  lf.frame = rotating_picture([omega0](double) { return omega0; }, lf.theta);
  return lf;
}

LabFrame chirped_cd_only(const DriveSchedule& s, double omega0) {
  LabFrame lf;
  lf.omega0 = omega0;
  auto omega = field_frequency(s, omega0);
  CumulativeIntegral th(omega, 0.0, s.duration());
  lf.theta = [th](double t) { return th(t); };
  const double tol = 1e-12 * s.scale();
  lf.h = [&s, omega, th, tol](double t) {
    const double td = theta_derivatives(s, t, tol).theta_dot;
    const double theta = th(t);
    return Coords{0.5 * hbar * td * std::sin(theta), 0.5 * hbar * td * std::cos(theta),
                  -0.5 * hbar * omega(t)};
  };
  lf.frame = rotating_picture(omega, lf.theta);
  return lf;
}

}  // namespace sta
