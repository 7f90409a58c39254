#pragma once

#include <vector>

#include "sta/schedule.hpp"
#include "sta/spline.hpp"

namespace sta {

// Drive-coordinate time series on a uniform grid, splined between nodes.
class CoordTrack {
 public:
  CoordTrack() = default;
  CoordTrack(double t0, double dt, std::vector<Coords> v);

  Coords operator()(double t) const { return {sx_(t), sy_(t), sz_(t)}; }
  const std::vector<Coords>& values() const { return v_; }
  double t0() const { return t0_; }
  double dt() const { return dt_; }

 private:
  double t0_ = 0.0, dt_ = 1.0;
  std::vector<Coords> v_;
  CubicSpline sx_, sy_, sz_;
};

// Tracked eigenbasis of a drive on a uniform time grid, in the zero-connection
// gauge, together with its coupling operator and the next-level drive.
//
// The basis is stored as A(t) = sum_n |n(t)><n| whose columns are the tracked
// eigenvectors written in the bare basis; the bras stay fixed, so A(0) matches
// the identity up to the boundary deficit reported below. Column 1 is the
// branch with maximal overlap onto bare |1> at t = 0; continuity in t is kept
// by overlap tracking, and phases are polished until the finite-difference
// connection <n|ndot> is negligible (the geometric phase is absorbed).
struct AdiabaticFrame {
  int level = 0;
  double t0 = 0.0, dt = 0.0;
  int n = 0;
  std::vector<Mat2> basis;     // A at the nodes
  std::vector<Coords> h;       // the drive this frame diagonalizes
  std::vector<double> e1;      // eigenvalue of column 1 (signed, = +-R)
  std::vector<Coords> k;       // i hbar Adot Adj(A), via (hbar/2) nhat x nhatdot
  std::vector<Coords> h_next;  // Adj(A) (H - K) A, the next-level drive

  double initial_overlap_deficit = 0.0;  // 1 - |<1|column 1 at t=0>|^2
  double max_connection = 0.0;           // residual max |<n|ndot>| after polishing

  double grid_time(int i) const { return t0 + dt * static_cast<double>(i); }
  double duration() const { return dt * static_cast<double>(n - 1); }

  // Interpolators. basis_at re-orthonormalizes the splined columns so every
  // returned matrix is unitary to machine precision.
  Mat2 basis_at(double t) const;
  Coords k_at(double t) const { return k_track_(t); }
  Coords h_at(double t) const { return h_track_(t); }
  Coords h_next_at(double t) const { return h_next_track_(t); }

  // filled by build_frame
  std::vector<CubicSpline> basis_splines;  // 8 component series
  CoordTrack k_track_, h_track_, h_next_track_;
};

// Builds the frame of a schedule on `grid_points` uniform nodes.
// Throws DegenerateHamiltonian if the gap closes, GridTooCoarse when
// adjacent-node eigenvectors overlap below 0.99.
AdiabaticFrame build_frame(const DriveSchedule& s, int grid_points = 4001);

// i hbar Adot Adj(A) of a basis series by 4th-order finite differences
// (one-sided at the edges), projected onto traceless Hermitian coordinates.
std::vector<Coords> generator_from_basis(const std::vector<Mat2>& a, double dt);

// 4th-order first derivative of a sampled series (uniform step).
std::vector<double> fd_derivative(const std::vector<double>& y, double dt);

// Next-level drive as a schedule: values by cubic spline through the grid,
// derivatives from dedicated finite-difference arrays (differentiating the
// value spline itself would cost about four orders of magnitude).
class SampledSchedule final : public DriveSchedule {
 public:
  SampledSchedule(double t0, double dt, const std::vector<Coords>& values);

  double duration() const override { return dur_; }
  Coords coords(double t) const override { return val_(t); }
  Coords coords_dot(double t) const override { return dot_(t); }
  Coords coords_ddot(double t) const override { return ddot_(t); }

 private:
  double dur_ = 0.0;
  CoordTrack val_, dot_, ddot_;
};

SampledSchedule iterate(const AdiabaticFrame& f);

// Correction terms as coordinate tracks on the frame grid.
CoordTrack cd_term_0(const AdiabaticFrame& f0);
// A0 K1 Adj(A0), computed matrix-wise at the nodes. Frames must share a grid.
CoordTrack cd_term_1(const AdiabaticFrame& f0, const AdiabaticFrame& f1);
CoordTrack cd_term_01(const AdiabaticFrame& f0, const AdiabaticFrame& f1);

}  // namespace sta
