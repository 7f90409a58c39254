#pragma once

#include <array>
#include <functional>
#include <vector>

#include "sta/su2.hpp"

namespace sta {

using HamiltonianFn = std::function<Coords(double)>;

struct PropOptions {
  double tolerance = 1e-10;    // local error bound per accepted step
  int report_points = 2001;    // dense output nodes (uniform, endpoints included)
  double min_step_frac = 1e-14;  // StepUnderflow below min_step_frac * t_f
};

struct TwoLevelTrajectory {
  std::vector<double> t;
  std::vector<State2> psi;
  std::vector<double> p1, p2;  // bare populations |c1|^2, |c2|^2
  double max_norm_error = 0.0;
  long steps = 0;
};

// Evolves i d/dt psi = (H(t).sigma) psi on [0, t_f]. Each step applies the
// exponential of the midpoint Hamiltonian, which is closed-form and exactly
// unitary for 2x2, so the scheme is 2nd order with no norm decay; the local
// error is measured as the deviation between one full and two half steps and
// controlled by step halving. Throws StepUnderflow when the required step
// falls below min_step_frac * t_f.
TwoLevelTrajectory propagate(const HamiltonianFn& h, const State2& psi0, double t_f,
                             const PropOptions& opt = {});

// Fixed-step variant (order checks, cheap scans).
TwoLevelTrajectory propagate_fixed(const HamiltonianFn& h, const State2& psi0, double t_f,
                                   long steps, int report_points = 2001);

// Populations in a moving basis: |<n(t)|psi(t)>|^2 with basis columns n = 1, 2.
std::vector<std::array<double, 2>> moving_basis_populations(
    const TwoLevelTrajectory& traj, const std::function<Mat2(double)>& basis);

}  // namespace sta
