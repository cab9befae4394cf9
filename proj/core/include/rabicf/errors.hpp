// errors.hpp — error taxonomy shared by all solver components
#pragma once

#include <stdexcept>

namespace rabicf {

// Base for every failure the solver raises on purpose. Parameter-validation
// problems use std::invalid_argument directly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation divides by the coupling g, which is zero. The free g = 0 model is
// served by the diagonalization routines instead.
struct CouplingZero : Error {
  using Error::Error;
};

// No minimal solution of the three-term recurrence exists at these
// parameters, so backward recursion has nothing to converge to.
struct MinimalSolutionUnavailable : Error {
  using Error::Error;
};

// The limiting recurrence has no two-root characteristic equation
// (k-photon coupling with k >= 3).
struct NoCharacteristicEquation : Error {
  using Error::Error;
};

// Operation requires a normalizable regime and the parameters are outside it.
struct RegimeUnsupported : Error {
  using Error::Error;
};

// Operation requires a non-normalizable regime (divergence diagnostics) and
// the parameters are inside the normalizable one.
struct RegimeMismatch : Error {
  using Error::Error;
};

// A candidate root traced back to a pole of the continued fraction rather
// than an eigenvalue; confirmation by the minimal-solution residual failed.
struct PoleArtifact : Error {
  using Error::Error;
};

// An iteration hit its cap before meeting its tolerance.
struct NoConvergence : Error {
  using Error::Error;
};

// A sector label does not belong to the model (wrong denominator, offset out
// of range, or the wrong family).
struct BlockMismatch : Error {
  using Error::Error;
};

// A statistical verdict was requested on fewer terms than it needs.
struct TooFewTerms : Error {
  using Error::Error;
};

}  // namespace rabicf
