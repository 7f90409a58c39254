#include "sta/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace sta {

LzWorkspace make_lz_workspace(double alpha, double x0, double T, int grid_points) {
  auto s = lz_schedule(alpha, x0, T);
  AdiabaticFrame f0 = build_frame(*s, grid_points);
  SampledSchedule s1 = iterate(f0);
  AdiabaticFrame f1 = build_frame(s1, grid_points);
  CoordTrack cd1 = cd_term_1(f0, f1);
  return {std::move(s), std::move(f0), std::move(s1), std::move(f1), std::move(cd1)};
}

namespace {

std::array<double, 3> pops_at(const DriveSchedule& s, double t, const State2& psi) {
  const Eigensystem es = eigensystem(s.coords(t));
  return {std::norm(psi.c1), std::norm(psi.c2), fidelity(es.up, psi)};
}

}  // namespace

TwoLevelProtocolRun run_lz_protocol(const LzWorkspace& ws, const std::string& protocol,
                                    double tolerance, int report_points) {
  const DriveSchedule& s = *ws.s;
  const double T = s.duration();

  HamiltonianFn h;
  State2 psi0 = eigensystem(s.coords(0.0)).dn;
  std::optional<ZRotationShortcut> zr;  // must outlive h
  if (protocol == "bare") {
    h = [&s](double t) { return s.coords(t); };
  } else if (protocol == "cd0") {
    h = [&s, &f = ws.frame0](double t) { return s.coords(t) + f.k_at(t); };
  } else if (protocol == "cd0-only") {
    h = [&f = ws.frame0](double t) { return f.k_at(t); };
  } else if (protocol == "cd1") {
    h = [&s, &c = ws.cd1](double t) { return s.coords(t) + c(t); };
  } else if (protocol == "cd01") {
    // both corrections with the sweep itself removed; the product picture of
    // this drive is exactly static
    h = [&f = ws.frame0, &c = ws.cd1](double t) { return f.k_at(t) + c(t); };
  } else if (protocol == "zrot") {
    zr.emplace(s);
    h = zr->shortcut();
    psi0 = apply(zr->frame().U(0.0).dagger(), psi0);
  } else {
    throw std::runtime_error("unknown two-level protocol '" + protocol + "'");
  }

  PropOptions opt;
  opt.tolerance = tolerance;
  opt.report_points = report_points;
  const TwoLevelTrajectory traj = propagate(h, psi0, T, opt);

  TwoLevelProtocolRun out;
  out.protocol = protocol;
  out.t = traj.t;
  out.drive.reserve(traj.t.size());
  out.pops.reserve(traj.t.size());
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out.drive.push_back(h(traj.t[i]));
    out.pops.push_back(pops_at(s, traj.t[i], traj.psi[i]));
  }
  const Eigensystem target = eigensystem(s.coords(T));
  out.fidelity = fidelity(target.dn, traj.psi.back());
  out.adiabatic_target_p1 = std::norm(target.dn.c1);
  out.norm_drift = traj.max_norm_error;
  out.steps = traj.steps;
  return out;
}

AtomVariantRun run_atom_variant(const LzWorkspace& ws, const std::string& variant, double omega0,
                                double tolerance, int report_points) {
  const DriveSchedule& s = *ws.s;
  const double T = s.duration();

  LabFrame lf;
  HamiltonianFn rot;
  if (variant == "rwa") {
    lf = rwa_lab_frame(s, omega0);
    rot = [&s](double t) { return s.coords(t); };
  } else if (variant == "cd") {
    lf = cd_lab_frame(s, omega0);
    rot = [&s, &f = ws.frame0](double t) { return s.coords(t) + f.k_at(t); };
  } else if (variant == "resonant-cd") {
    lf = resonant_cd_only(s, omega0);
    rot = [&f = ws.frame0](double t) { return f.k_at(t); };
  } else if (variant == "chirped-cd") {
    lf = chirped_cd_only(s, omega0);
    rot = [&f = ws.frame0](double t) { return f.k_at(t); };
  } else {
    throw std::runtime_error("unknown lab-frame variant '" + variant + "'");
  }

  const State2 psi0 = eigensystem(s.coords(0.0)).dn;  // theta(0) = 0, so U_L(0) = 1
  PropOptions opt;
  opt.tolerance = tolerance;
  opt.report_points = report_points;
  const TwoLevelTrajectory lab = propagate(lf.h, psi0, T, opt);
  const TwoLevelTrajectory ref = propagate(rot, psi0, T, opt);

  AtomVariantRun out;
  out.variant = variant;
  out.t = lab.t;
  out.drive.reserve(lab.t.size());
  out.pops.reserve(lab.t.size());
  out.rotating_pops.reserve(lab.t.size());
  for (std::size_t i = 0; i < lab.t.size(); ++i) {
    const double t = lab.t[i];
    out.drive.push_back(lf.h(t));
    const Eigensystem lab_es = eigensystem(lf.h(t));
    out.pops.push_back({lab.p1[i], lab.p2[i], fidelity(lab_es.up, lab.psi[i])});
    const Eigensystem rot_es = eigensystem(rot(t));
    out.rotating_pops.push_back({ref.p1[i], ref.p2[i], fidelity(rot_es.up, ref.psi[i])});
    out.max_population_diff = std::max({out.max_population_diff, std::abs(lab.p1[i] - ref.p1[i]),
                                        std::abs(lab.p2[i] - ref.p2[i])});
  }
  const State2 back = apply(lf.frame.U(T).dagger(), lab.psi.back());
  out.rotating_fidelity = fidelity(eigensystem(s.coords(T)).dn, back);
  out.norm_drift = std::max(lab.max_norm_error, ref.max_norm_error);
  out.steps = lab.steps;
  return out;
}

TrapWorkspace make_trap_workspace(double omega_start, double omega_end, double t_f, double mass,
                                  int grid_points) {
  FrequencyRamp ramp = make_ramp(omega_start, omega_end, t_f);
  const Grid grid = symmetric_grid(box_half_width(ramp, mass), grid_points);
  GridWavefunction psi0 = ground_state(grid, mass, omega_start);
  ErmakovSolution oracle = ermakov_oracle(ramp);
  return {std::move(ramp), mass, grid, std::move(psi0), std::move(oracle)};
}

TrapProtocolRun run_trap_protocol(const TrapWorkspace& ws, const std::string& protocol, int steps,
                                  int report_points, int n_ho) {
  TrapKind kind;
  if (protocol == "reference")
    kind = TrapKind::reference;
  else if (protocol == "cd")
    kind = TrapKind::cd;
  else if (protocol == "modified" || protocol == "modified-frequency")
    kind = TrapKind::modified;
  else
    throw std::runtime_error("unknown trap protocol '" + protocol + "'");

  TrapProtocolRun out;
  out.protocol = protocol;
  out.run = propagate_grid(kind, ws.ramp, ws.psi0, steps, report_points);
  out.width.reserve(out.run.snapshots.size());
  for (const GridWavefunction& w : out.run.snapshots) out.width.push_back(w.width());
  out.n_ho_used = kind == TrapKind::reference ? std::max(n_ho, 96) : n_ho;
  out.excitation =
      final_excitation(out.run.snapshots.back(), ws.ramp.omega(ws.ramp.t_f), out.n_ho_used);
  return out;
}

}  // namespace sta
