#pragma once

#include <functional>
#include <vector>

#include "sta/errors.hpp"
#include "sta/spline.hpp"
#include "sta/su2.hpp"

namespace sta {

// Trap frequency profile with analytic derivatives.
struct FrequencyRamp {
  double t_f = 0.0;
  std::function<double(double)> omega, omega_dot, omega_ddot;
  // set when the ramp has omega_dot = omega_ddot = 0 at both ends
  bool flat_ends = false;

  // spot-check positivity and the supplied derivatives against finite
  // differences (1e-8 relative); throws InvalidRamp
  void validate(int samples = 33) const;
};

// Quintic smoothstep between the endpoint frequencies: the minimal-degree
// polynomial with first and second derivatives zero at both ends. Its peak
// slope is 15/8 |omega_end - omega_start| / t_f at the midpoint.
FrequencyRamp make_ramp(double omega_start, double omega_end, double t_f);
FrequencyRamp constant_ramp(double omega, double t_f);

// Effective squared frequency of the rescaled-frame oscillator,
//   omega'^2 = omega^2 - 3 omega_dot^2 / (4 omega^2) + omega_ddot / (2 omega),
// returned signed: negative values mean a transiently inverted trap.
double omega_prime_sq(const FrequencyRamp& r, double t);

struct Grid {
  double q_min = 0.0, dq = 0.0;
  int n = 0;
  double q(int i) const { return q_min + dq * i; }
  double q_max() const { return q_min + dq * (n - 1); }
  // trapezoid quadrature weights (dq, halved at the two ends)
  std::vector<double> weights() const;
};

Grid symmetric_grid(double half_width, int n);

struct GridWavefunction {
  Grid grid;
  double mass = 1.0;
  std::vector<cplx> psi;

  double norm() const;  // sqrt of the trapezoid integral of |psi|^2
  void normalize();
  double mean_q() const;
  double width() const;       // rms deviation of the density
  double edge_ratio() const;  // larger edge amplitude over peak amplitude
  std::vector<double> density() const;
};

// trapezoid <a|b>; throws GridMismatch when the grids differ
cplx grid_overlap(const GridWavefunction& a, const GridWavefunction& b);

GridWavefunction ground_state(const Grid& g, double mass, double omega);

// Scaling-factor solution of  b_ddot + omega^2(t) b = omega(0)^2 / b^3,
// b(0) = 1, b_dot(0) = 0. A ground state driven by the bare trap stays
// Gaussian with width b(t) sigma(0). Fixed-step RK4 on a fine grid.
struct ErmakovSolution {
  double t_f = 0.0;
  double b_max = 1.0;
  CubicSpline b, b_dot;
};

ErmakovSolution ermakov_oracle(const FrequencyRamp& ramp, int steps = 4000);

// Box half-width covering the largest instantaneous width: 12 sigma_max,
// sigma_max = 1.5 max(b_max, max_t sqrt(omega(0)/omega(t))) sigma(0).
// The second argument of the max covers slow ramps where the width follows
// the adiabatic value rather than the oscillating Ermakov factor.
double box_half_width(const FrequencyRamp& ramp, double mass, double hbar_ = hbar,
                      double sigma_factor = 12.0);

enum class TrapKind { reference, cd, modified };

struct TrapRun {
  std::vector<double> t;
  std::vector<GridWavefunction> snapshots;  // t.size() entries, last one at t_f
  double norm_drift = 0.0;                  // max |norm - 1| seen
  double max_edge_ratio = 0.0;
};

// Strang splitting: kinetic half step (spectral), position-space block at the
// step midpoint, kinetic half step. The position block is the potential full
// step for `reference` and `modified` (the latter with the signed
// omega_prime_sq), and potential half / dilation / potential half for `cd`.
// The dilation exp[-i lambda (pq+qp)/(2 hbar)] psi(q) = e^{-lambda/2} psi(e^{-lambda} q),
// lambda = -omega_dot dt / (2 omega), is applied by cubic-spline resampling.
// Norm and edge amplitude are checked every step (NormDrift, BoxOverflow).
TrapRun propagate_grid(TrapKind kind, const FrequencyRamp& ramp, const GridWavefunction& psi0,
                       int steps, int report_points = 41);

// Pointwise phase exp(sign * i m omega_dot q^2 / (4 hbar omega)); sign = +1
// maps the rescaled-frame state onto the cd-driven one.
GridWavefunction u_q_map(const GridWavefunction& psi, const FrequencyRamp& ramp, double t,
                         int sign = +1);

struct ExcitationReport {
  std::vector<double> populations;  // lowest n_ho eigenstates of the target trap
  double captured = 0.0;            // sum of the populations
  double mean_energy = 0.0;         // grid <H> for the target trap (spectral kinetic part)
};

// Projection onto Hermite functions of the target trap evaluated on the grid.
// Throws IncompleteBasis when the captured probability falls below 1 - 1e-6.
ExcitationReport final_excitation(const GridWavefunction& psi, double omega_target, int n_ho = 32);

// Analytic ground-state population after a bare-trap ramp from the ground
// state: overlap of the Ermakov Gaussian (width b(t_f), phase b_dot) with the
// target ground state.
double reference_ground_population(const ErmakovSolution& erk, const FrequencyRamp& ramp);

}  // namespace sta
