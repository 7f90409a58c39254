#include "sta/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sta {

namespace {

State2 step_midpoint(const HamiltonianFn& h, const State2& psi, double t, double dt) {
  return apply(exp_pauli(h(t + 0.5 * dt), dt), psi);
}

void record(TwoLevelTrajectory& traj, double t, const State2& psi) {
  traj.t.push_back(t);
  traj.psi.push_back(psi);
  traj.p1.push_back(std::norm(psi.c1));
  traj.p2.push_back(std::norm(psi.c2));
  traj.max_norm_error = std::max(traj.max_norm_error, std::abs(psi.norm() - 1.0));
}

}  // namespace

TwoLevelTrajectory propagate(const HamiltonianFn& h, const State2& psi0, double t_f,
                             const PropOptions& opt) {
  TwoLevelTrajectory traj;
  const int np = std::max(2, opt.report_points);
  const double dt_rep = t_f / static_cast<double>(np - 1);
  const double h_min = opt.min_step_frac * t_f;

  State2 psi = psi0;
  record(traj, 0.0, psi);

  double step = dt_rep;  // adaptive guess carried across report intervals
  for (int k = 1; k < np; ++k) {
    const double t_goal = (k == np - 1) ? t_f : dt_rep * static_cast<double>(k);
    double t = traj.t.back();
    while (t < t_goal) {
      double dt = std::min(step, t_goal - t);
      for (;;) {
        const State2 full = step_midpoint(h, psi, t, dt);
        const State2 h1 = step_midpoint(h, psi, t, 0.5 * dt);
        const State2 half = step_midpoint(h, h1, t + 0.5 * dt, 0.5 * dt);
        const double err = (full - half).norm();
        if (err <= opt.tolerance) {
          psi = half;
          t += dt;
          traj.steps += 2;
          // grow cautiously when clearly under budget
          if (err < 0.0625 * opt.tolerance) step = std::min(2.0 * dt, dt_rep);
          else step = dt;
          break;
        }
        dt *= 0.5;
        if (dt < h_min) {
          std::ostringstream os;
          os << "propagate: step underflow at t = " << t << " (needed step < " << h_min << ")";
          throw StepUnderflow(os.str());
        }
      }
    }
    record(traj, t_goal, psi);
  }
  return traj;
}

TwoLevelTrajectory propagate_fixed(const HamiltonianFn& h, const State2& psi0, double t_f,
                                   long steps, int report_points) {
  TwoLevelTrajectory traj;
  State2 psi = psi0;
  record(traj, 0.0, psi);
  const double dt = t_f / static_cast<double>(steps);
  const long stride = std::max<long>(1, steps / std::max(1, report_points - 1));
  for (long i = 0; i < steps; ++i) {
    psi = step_midpoint(h, psi, dt * static_cast<double>(i), dt);
    ++traj.steps;
    if ((i + 1) % stride == 0 && i + 1 < steps) record(traj, dt * static_cast<double>(i + 1), psi);
  }
  record(traj, t_f, psi);
  return traj;
}

std::vector<std::array<double, 2>> moving_basis_populations(
    const TwoLevelTrajectory& traj, const std::function<Mat2(double)>& basis) {
  std::vector<std::array<double, 2>> out(traj.t.size());
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    const Mat2 a = basis(traj.t[i]);
    const State2 v1{a.a, a.c}, v2{a.b, a.d};
    out[i] = {fidelity(v1, traj.psi[i]), fidelity(v2, traj.psi[i])};
  }
  return out;
}

}  // namespace sta
