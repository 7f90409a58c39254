#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sta/pictures.hpp"
#include "sta/scenarios.hpp"

using namespace sta;
using oracles::pi;
using oracles::SweepForms;

namespace {

const LzWorkspace& ws() {
  static LzWorkspace w = make_lz_workspace(-10.0, 1.0, 2.0);
  return w;
}

const SweepForms forms{-10.0, 1.0, 2.0};

// psi_S(t_f) versus U(t_f) psi_I(t_f) for one picture of one problem.
double frame_roundtrip_error(const HamiltonianFn& h_s, const FrameGenerator& fr, double t_f,
                             const State2& psi0, double tol = 1e-12) {
  PropOptions opt;
  opt.tolerance = tol;
  opt.report_points = 3;
  const auto direct = propagate(h_s, psi0, t_f, opt);
  const HamiltonianFn h_i = ip_transform(h_s, fr);
  const State2 psi_i0 = apply(fr.U(0.0).dagger(), psi0);
  const auto moved = propagate(h_i, psi_i0, t_f, opt);
  const State2 back = apply(fr.U(t_f), moved.psi.back());
  return oracles::state_dist(direct.psi.back(), back);
}

}  // namespace

TEST_CASE("identity picture changes nothing") {
  const Mat2 h = to_matrix({0.7, -0.2, 1.1});
  const Mat2 same = ip_transform(h, Mat2::identity(), Mat2{});
  CHECK((same - h).max_abs() < 1e-15);

  FrameGenerator id;
  id.U = [](double) { return Mat2::identity(); };
  id.K = [](double) { return Mat2{}; };
  const HamiltonianFn f = [](double t) { return Coords{1.0, 0.0, t}; };
  const HamiltonianFn g = ip_transform(f, id);
  CHECK((g(0.3) - f(0.3)).r() < 1e-15);
}

TEST_CASE("the correction-only drive freezes in its own eigenframe") {
  const AdiabaticFrame& f0 = ws().frame0;
  const FrameGenerator fr = adiabatic_frame(f0);
  const HamiltonianFn h_s = [&](double t) { return f0.k_at(t); };
  const HamiltonianFn h_i = ip_transform(h_s, fr);
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> ts(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    CHECK(h_i(ts(gen)).r() < 1e-10);
  }
  // and the interaction state does not move
  const State2 psi0{cplx(0.3, 0.4), cplx(0.5, std::sqrt(1.0 - 0.5))};
  PropOptions opt;
  opt.report_points = 3;
  const auto traj = propagate(h_i, psi0.normalized(), 2.0, opt);
  CHECK(oracles::state_dist(traj.psi.back(), psi0.normalized()) < 1e-8);
}

TEST_CASE("the bare sweep transforms into the once-iterated drive") {
  const FrameGenerator fr = adiabatic_frame(ws().frame0);
  const DriveSchedule& s = *ws().s;
  const HamiltonianFn h_i = ip_transform([&](double t) { return s.coords(t); }, fr);
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> ts(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double t = ts(gen);
    CHECK((h_i(t) - ws().s1.coords(t)).r() < 1e-9 * (1.0 + ws().s1.coords(t).r()));
  }
}

TEST_CASE("cumulative integrals follow antiderivatives") {
  const CumulativeIntegral F([](double t) { return std::cos(t); }, 0.0, 10.0);
  std::mt19937 gen(43);
  std::uniform_real_distribution<double> ts(0.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double t = ts(gen);
    CHECK(std::abs(F(t) - std::sin(t)) < 1e-12);
  }
  CHECK(std::abs(F(0.0)) < 1e-15);
  // a stiffer integrand
  const CumulativeIntegral G([](double t) { return std::exp(-3.0 * t) * std::cos(40.0 * t); },
                             0.0, 2.0);
  auto exact = [](double t) {
    // int e^{-3t} cos(40 t) = e^{-3t} (40 sin(40t) - 3 cos(40t)) / 1609
    return (std::exp(-3.0 * t) * (40.0 * std::sin(40.0 * t) - 3.0 * std::cos(40.0 * t)) + 3.0) /
           1609.0;
  };
  for (int i = 0; i <= 40; ++i) {
    const double t = 2.0 * i / 40.0;
    CHECK(std::abs(G(t) - exact(t)) < 1e-11);
  }
}

TEST_CASE("z rotation leaves constant drives untouched") {
  const oracles::ConstSchedule s({1.3, 0.0, -0.4}, 2.0);
  const ZRotationShortcut zr(s);
  CHECK(zr.phi(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(zr.phi_dot(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  const Coords c = zr.shortcut_coords(0.7);
  CHECK(c.x == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(c.y == 0.0);
  CHECK(c.z == doctest::Approx(-0.4).epsilon(1e-14));
}

TEST_CASE("z rotation of the sweep matches the closed forms") {
  const DriveSchedule& s = *ws().s;
  const ZRotationShortcut zr(s);

  CHECK(zr.p(1.0) == doctest::Approx(std::sqrt(26.0)).epsilon(1e-12));
  CHECK(zr.phi(1.0) == doctest::Approx(std::atan(5.0)).epsilon(1e-12));

  std::mt19937 gen(44);
  std::uniform_real_distribution<double> ts(0.0, 2.0);
  for (int i = 0; i < 60; ++i) {
    const double t = ts(gen);
    CHECK(zr.phi(t) == doctest::Approx(forms.phi(t)).epsilon(1e-10));
    CHECK(zr.phi_dot(t) == doctest::Approx(forms.phi_dot(t)).epsilon(1e-8));
    const Coords c = zr.shortcut_coords(t);
    CHECK(c.x == doctest::Approx(forms.p(t)).epsilon(1e-10));
    CHECK(c.y == 0.0);
    CHECK(c.z ==
          doctest::Approx(forms.z(t) - 0.5 * hbar * forms.phi_dot(t)).epsilon(1e-8));
  }
}

TEST_CASE("z rotation rejects drives it cannot straighten") {
  const oracles::FourierSchedule with_y(202, true);
  CHECK_THROWS_AS(ZRotationShortcut{with_y}, InvalidSchedule);

  struct XCross final : DriveSchedule {
    double duration() const override { return 2.0; }
    Coords coords(double t) const override { return {t - 1.0, 0.0, 1.0}; }
    Coords coords_dot(double) const override { return {1.0, 0.0, 0.0}; }
    Coords coords_ddot(double) const override { return {}; }
  };
  CHECK_THROWS_AS(ZRotationShortcut{XCross{}}, PhaseBranchError);
}

TEST_CASE("every picture generator is unitary with an Hermitian generator") {
  const DriveSchedule& s = *ws().s;
  const ZRotationShortcut zr(s);
  const LabFrame rwa = rwa_lab_frame(s, 25.0);
  const LabFrame cdl = cd_lab_frame(s, 25.0);
  const LabFrame res = resonant_cd_only(s, 25.0);
  const LabFrame chi = chirped_cd_only(s, 25.0);

  std::vector<FrameGenerator> frames{adiabatic_frame(ws().frame0), adiabatic_frame(ws().frame1),
                                     product_frame(ws().frame0, ws().frame1), zr.frame(),
                                     rwa.frame, cdl.frame, res.frame, chi.frame};

  std::mt19937 gen(45);
  std::uniform_real_distribution<double> ts(1e-4, 2.0 - 1e-4);
  const double h = 1e-6;
  for (const auto& fr : frames) {
    for (int i = 0; i < 20; ++i) {
      const double t = ts(gen);
      const Mat2 u = fr.U(t);
      const Mat2 k = fr.K(t);
      CHECK(unitarity_defect(u) < 1e-12);
      CHECK((k - k.dagger()).max_abs() < 1e-12);
      // i hbar Udot Adj(U) from Richardson differences of U itself
      const Mat2 d1 = (cplx(1.0, 0.0) / cplx(2.0 * h, 0.0)) * (fr.U(t + h) - fr.U(t - h));
      const Mat2 d2 = (cplx(1.0, 0.0) / cplx(h, 0.0)) * (fr.U(t + 0.5 * h) - fr.U(t - 0.5 * h));
      const Mat2 du = (cplx(1.0, 0.0) / cplx(3.0, 0.0)) * ((cplx(4.0, 0.0) * d2) - d1);
      const Mat2 k_fd = cplx(0.0, hbar) * (du * u.dagger());
      CHECK((k_fd - k).max_abs() < 1e-8 * (1.0 + k.max_abs()));
    }
  }
}

TEST_CASE("lab drives carry the stated diagonal and coupling envelope") {
  const DriveSchedule& s = *ws().s;
  const double w0 = 25.0;
  const LabFrame rwa = rwa_lab_frame(s, w0);
  const LabFrame cdl = cd_lab_frame(s, w0);
  const LabFrame res = resonant_cd_only(s, w0);
  const LabFrame chi = chirped_cd_only(s, w0);

  std::mt19937 gen(46);
  std::uniform_real_distribution<double> ts(0.0, 2.0);
  for (int i = 0; i < 60; ++i) {
    const double t = ts(gen);
    const Coords c0 = s.coords(t);
    const double omega = w0 + 2.0 * c0.z / hbar;
    const double theta_exact = w0 * t + (-10.0) * ((t - 1.0) * (t - 1.0) - 1.0);
    const double th_dot = forms.theta0_dot(t);

    // plain coupling: constant diagonal, envelope hbar Omega_R / 2 = X0
    const Coords a = rwa.h(t);
    CHECK(a.z == doctest::Approx(-0.5 * hbar * w0).epsilon(1e-13));
    CHECK(std::hypot(a.x, a.y) == doctest::Approx(c0.x).epsilon(1e-12));
    CHECK(rwa.theta(t) == doctest::Approx(theta_exact).epsilon(1e-10));
    // off-diagonal (1,2) entry is (hbar Omega_R / 2) e^{i theta}
    const cplx b = to_matrix(a).b;
    CHECK(std::abs(b - c0.x * std::polar(1.0, rwa.theta(t))) < 1e-9);

    // two-quadrature field: envelope (hbar/2) sqrt(Omega^2 + Theta_dot^2)
    const Coords d = cdl.h(t);
    CHECK(d.z == doctest::Approx(-0.5 * hbar * w0).epsilon(1e-13));
    const double env = 0.5 * hbar * std::hypot(2.0 * c0.x / hbar, th_dot);
    CHECK(std::hypot(d.x, d.y) == doctest::Approx(env).epsilon(1e-9));
    const cplx bd = to_matrix(d).b * std::polar(1.0, -cdl.theta(t));
    CHECK(std::abs(bd - cplx(c0.x, -0.5 * hbar * th_dot)) < 1e-8);

    // correction alone at fixed frequency
    const Coords e = res.h(t);
    CHECK(e.z == doctest::Approx(-0.5 * hbar * w0).epsilon(1e-13));
    const cplx be = to_matrix(e).b * std::polar(1.0, -w0 * t);
    CHECK(std::abs(be - cplx(0.0, -0.5 * hbar * th_dot)) < 1e-9);

    // correction alone with the chirp kept on the diagonal
    const Coords f = chi.h(t);
    CHECK(f.z == doctest::Approx(-0.5 * hbar * omega).epsilon(1e-12));
    const cplx bf = to_matrix(f).b * std::polar(1.0, -chi.theta(t));
    CHECK(std::abs(bf - cplx(0.0, -0.5 * hbar * th_dot)) < 1e-8);
  }
}

TEST_CASE("lab frames reject frequencies that would go negative") {
  CHECK_THROWS_AS(rwa_lab_frame(*ws().s, 10.0), InvalidSchedule);
  CHECK_THROWS_AS(chirped_cd_only(*ws().s, 10.0), InvalidSchedule);
}

TEST_CASE("resonant constant coupling produces textbook oscillations") {
  const oracles::ConstSchedule s({0.5, 0.0, 0.0}, 4.0);
  const LabFrame lab = rwa_lab_frame(s, 8.0);
  PropOptions opt;
  opt.tolerance = 1e-11;
  opt.report_points = 81;
  const auto traj = propagate(lab.h, State2{1.0, 0.0}, 4.0, opt);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    const double expect = std::cos(0.5 * traj.t[i]) * std::cos(0.5 * traj.t[i]);
    CHECK(std::abs(traj.p1[i] - expect) < 1e-6);
  }
}

TEST_CASE("correction-only drives freeze populations when the angle is constant") {
  const oracles::ConstSchedule s({0.8, 0.0, 0.3}, 3.0);
  const LabFrame res = resonant_cd_only(s, 12.0);
  PropOptions opt;
  opt.tolerance = 1e-11;
  opt.report_points = 61;
  const State2 psi0 = State2{cplx(0.6, 0.0), cplx(0.0, 0.8)};
  const auto traj = propagate(res.h, psi0, 3.0, opt);
  for (const double p : traj.p1) CHECK(std::abs(p - 0.36) < 1e-9);
}

TEST_CASE("fixed and chirped correction-only drives share their populations") {
  const DriveSchedule& s = *ws().s;
  const LabFrame res = resonant_cd_only(s, 25.0);
  const LabFrame chi = chirped_cd_only(s, 25.0);
  const State2 psi0 = eigensystem(s.coords(0.0)).dn;
  PropOptions opt;
  opt.tolerance = 1e-12;
  opt.report_points = 201;
  const auto a = propagate(res.h, psi0, 2.0, opt);
  const auto b = propagate(chi.h, psi0, 2.0, opt);
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    CHECK(std::abs(a.p1[i] - b.p1[i]) < 1e-8);
  }
}

TEST_CASE("diagonal pictures preserve bare populations") {
  const DriveSchedule& s = *ws().s;
  const LabFrame lab = rwa_lab_frame(s, 25.0);
  const State2 psi0 = eigensystem(s.coords(0.0)).dn;
  PropOptions opt;
  opt.tolerance = 1e-12;
  opt.report_points = 5;
  const auto traj = propagate(lab.h, psi0, 2.0, opt);
  const State2 mapped = apply(lab.frame.U(2.0).dagger(), traj.psi.back());
  CHECK(std::abs(std::norm(mapped.c1) - traj.p1.back()) < 1e-12);
  CHECK(std::abs(std::norm(mapped.c2) - traj.p2.back()) < 1e-12);
}

TEST_CASE("propagating in any picture and mapping back lands on the same state") {
  auto run_all = [](const DriveSchedule& s, double w0) {
    const AdiabaticFrame f0 = build_frame(s, 4001);
    const SampledSchedule s1 = iterate(f0);
    const AdiabaticFrame f1 = build_frame(s1, 4001);
    const CoordTrack c0 = cd_term_0(f0);
    const CoordTrack c01 = cd_term_01(f0, f1);
    const ZRotationShortcut zr(s);
    const LabFrame rwa = rwa_lab_frame(s, w0);
    const LabFrame cdl = cd_lab_frame(s, w0);
    const double T = s.duration();
    const State2 g0 = eigensystem(s.coords(0.0)).dn;

    const HamiltonianFn bare = [&](double t) { return s.coords(t); };
    const HamiltonianFn iter1 = [&](double t) { return s1.coords(t); };
    const HamiltonianFn cd0 = [&](double t) { return s.coords(t) + c0(t); };
    const HamiltonianFn cd01 = [&](double t) { return s.coords(t) + c01(t); };

    CHECK(frame_roundtrip_error(bare, adiabatic_frame(f0), T, g0) < 1e-8);
    CHECK(frame_roundtrip_error(iter1, adiabatic_frame(f1), T, g0) < 1e-8);
    CHECK(frame_roundtrip_error(cd0, zr.frame(), T, g0) < 1e-8);
    CHECK(frame_roundtrip_error(rwa.h, rwa.frame, T, g0) < 1e-8);
    CHECK(frame_roundtrip_error(cdl.h, cdl.frame, T, g0) < 1e-8);
    CHECK(frame_roundtrip_error(cd01, product_frame(f0, f1), T, g0) < 1e-8);

    // third route: an independent integrator on the untransformed problem
    PropOptions opt;
    opt.tolerance = 1e-12;
    opt.report_points = 3;
    const auto direct = propagate(cd01, g0, T, opt);
    CHECK(oracles::state_dist(direct.psi.back(), oracles::rk78_final(cd01, g0, T)) < 1e-8);
  };

  run_all(*ws().s, 25.0);
  run_all(oracles::FourierSchedule(710, false), 10.0);
  run_all(oracles::FourierSchedule(711, false), 10.0);
}
