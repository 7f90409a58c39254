#pragma once

#include <stdexcept>
#include <string>

namespace sta {

// One exception type per failure mode so callers (and tests) can catch precisely.

// Eigenbasis requested where the spectral gap is below tolerance.
struct DegenerateHamiltonian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adjacent-node eigenvectors overlap too little for continuity tracking.
struct GridTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Schedule parameters or supplied derivatives are inconsistent.
struct InvalidSchedule : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A tracked angle cannot stay on its continuous branch.
struct PhaseBranchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive stepping drove the step below the representable floor.
struct StepUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Frequency ramp violates positivity or basic sanity.
struct InvalidRamp : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wavefunction amplitude reached the edge of the spatial box.
struct BoxOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Norm conservation broke beyond tolerance during a grid run.
struct NormDrift : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Projection basis too small to capture the state.
struct IncompleteBasis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two tabulated series do not share a grid.
struct GridMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sta
