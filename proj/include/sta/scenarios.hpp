#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "sta/frames.hpp"
#include "sta/harmonic.hpp"
#include "sta/pictures.hpp"
#include "sta/propagate.hpp"

namespace sta {

// Everything the two-level protocols share for one parameter set: the sweep,
// its tracked eigenframe, the once-iterated schedule with its own frame, and
// the level-1 correction mapped back to the bare basis.
struct LzWorkspace {
  std::unique_ptr<DriveSchedule> s;
  AdiabaticFrame frame0;
  SampledSchedule s1;
  AdiabaticFrame frame1;
  CoordTrack cd1;
};

LzWorkspace make_lz_workspace(double alpha, double x0, double T, int grid_points = 4001);

inline const std::vector<std::string> two_level_protocols = {"bare", "cd0",      "cd1",
                                                             "cd01", "cd0-only", "zrot"};

struct TwoLevelProtocolRun {
  std::string protocol;
  std::vector<double> t;
  std::vector<Coords> drive;                // the protocol's own drive at the report times
  std::vector<std::array<double, 3>> pops;  // P1, P2, instantaneous-eigenstate P1
  double fidelity = 0.0;                    // to the instantaneous ground state at t_f
  double adiabatic_target_p1 = 0.0;         // bare P1 of that ground state
  double norm_drift = 0.0;
  long steps = 0;
};

// bare: the sweep itself. cd0 / cd1: sweep plus the first / the iterated
// correction. cd0-only: the first correction alone. cd01: both corrections
// with the sweep dropped, which freezes the product picture exactly.
// zrot: the rotated drive
// (P, 0, Z - hbar phi_dot / 2), started from Adj(U_z(0)) applied to the
// ground state so the run stays the rotated picture of the cd0 run; its
// populations match cd0 (the rotation is diagonal) while its fidelity keeps
// the phase mismatch of the rotation at t_f.
TwoLevelProtocolRun run_lz_protocol(const LzWorkspace& ws, const std::string& protocol,
                                    double tolerance = 1e-10, int report_points = 2001);

inline const std::vector<std::string> atom_variants = {"rwa", "cd", "resonant-cd", "chirped-cd"};

struct AtomVariantRun {
  std::string variant;
  std::vector<double> t;
  std::vector<Coords> drive;                          // lab-frame coordinates
  std::vector<std::array<double, 3>> pops;            // bare populations of the lab run
  std::vector<std::array<double, 3>> rotating_pops;   // counterpart run on the same grid
  double max_population_diff = 0.0;                   // lab vs counterpart, both levels
  double rotating_fidelity = 0.0;                     // after mapping back with Adj(U_L)
  double norm_drift = 0.0;
  long steps = 0;
};

// rwa: plain oscillating coupling, counterpart = the sweep. cd: two-quadrature
// field, counterpart = sweep + correction. resonant-cd / chirped-cd:
// correction-only field at fixed / chirped frequency, counterpart = the
// correction alone. Bare populations are invariant under the diagonal
// rotating-frame map, so lab and counterpart populations must agree.
AtomVariantRun run_atom_variant(const LzWorkspace& ws, const std::string& variant, double omega0,
                                double tolerance = 1e-12, int report_points = 2001);

struct TrapWorkspace {
  FrequencyRamp ramp;
  double mass = 1.0;
  Grid grid;
  GridWavefunction psi0;  // ground state of the initial trap
  ErmakovSolution oracle;
};

TrapWorkspace make_trap_workspace(double omega_start, double omega_end, double t_f,
                                  double mass = 1.0, int grid_points = 2048);

inline const std::vector<std::string> trap_protocols = {"reference", "cd", "modified"};

struct TrapProtocolRun {
  std::string protocol;
  TrapRun run;
  std::vector<double> width;  // one value per snapshot
  ExcitationReport excitation;  // against the final trap
  int n_ho_used = 0;
};

// "modified-frequency" is accepted as an alias for "modified". The reference
// run projects onto at least 96 target states; its excitation spreads far
// beyond the default basis.
TrapProtocolRun run_trap_protocol(const TrapWorkspace& ws, const std::string& protocol,
                                  int steps = 4000, int report_points = 41, int n_ho = 32);

int run_cli(int argc, char** argv);

}  // namespace sta
