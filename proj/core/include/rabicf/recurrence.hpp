// recurrence.hpp — three-term recurrences of the sector expansions
#pragma once

#include <cstddef>
#include <vector>

#include "rabicf/model.hpp"

namespace rabicf::recurrence {

// Coefficients of S_{n+1} + c S_n + d S_{n-1} = 0 at a given index. For the
// two-mode model in block kappa with sector parity s = +-1:
//   c = (s (-1)^n Delta - E + 2 omega (n + kappa - 1/2)) / (g (n + 1)(n + 2 kappa))
//   d = 1 / ((n + 1)(n + 2 kappa))
// For the k-photon model in block q, with the index products
// p_j(x) = prod_{j=1..k} (x + 1 + q - ((j-1)k + 1)/k^2):
//   c = (s (-1)^n Delta - E + k omega (n + q - 1/k^2)) / (g k^k p(n))
//   d = 1 / (k^k p(n))
// c is affine in E with slope -1/(g k^k p(n)) resp. -1/(g (n+1)(n+2 kappa)),
// and d > 0 at every index.
struct CoefficientPair {
  double c = 0.0;
  double d = 0.0;
  std::size_t n = 0;
};

enum class SolutionKind {
  ForwardDominant,  // generic forward iteration from S_0 = 1, S_1 = -c_0
  BackwardMinimal,  // Miller backward recursion onto the minimal solution
};

// A recurrence solution with per-index power-of-two rescaling:
//   S_n = values[n] * 2^scale2[n].
// Rescaling by powers of two keeps the stored values exact (no rounding from
// the scaling itself) while sequences like t^n / n! run far outside double
// range in both directions. After normalization values[0] = 1, scale2[0] = 0.
struct SolutionSequence {
  std::vector<double> values;
  std::vector<int> scale2;
  double energy = 0.0;
  model::SectorLabel sector;
  SolutionKind kind = SolutionKind::ForwardDominant;

  std::size_t size() const { return values.size(); }
  double value(std::size_t n) const;    // S_n; may over/underflow for extreme n
  double log_abs(std::size_t n) const;  // log |S_n|, -inf for an exact zero
  double sign(std::size_t n) const;     // -1, 0, +1
  double ratio(std::size_t n) const;    // S_{n+1} / S_n, computed scale-exactly
};

// Companion polynomial family P_n(E): degree n in E, P_0 = 1, generated by
// the same recurrence after clearing the factorial weights,
//   TwoMode:  P_{n+1} = (1/g) [E - s (-1)^n Delta - 2 omega (n + kappa - 1/2)] P_n
//                       - n (n + 2 kappa - 1) P_{n-1}
//   KPhoton:  P_{n+1} = (1/g) [E - s (-1)^n Delta - k omega (n + q - 1/k^2)] P_n
//                       - prod_{j=1..k} [k (n + q - ((j-1)k + 1)/k^2)] P_{n-1}.
// Same rescaled storage as SolutionSequence.
struct OrthoPolySequence {
  std::vector<double> values;
  std::vector<int> scale2;
  double energy = 0.0;
  model::SectorLabel sector;

  std::size_t size() const { return values.size(); }
  double value(std::size_t n) const;
  double log_abs(std::size_t n) const;
  double sign(std::size_t n) const;
};

// Throws CouplingZero when g = 0 and BlockMismatch for a foreign sector.
CoefficientPair coeff_at(const model::ModelParams& params, const model::SectorLabel& sector,
                         std::size_t n, double energy);

// S_0..S_N of the forward solution. Dominant for generic E; at an eigenvalue
// the forward solution is the minimal one by construction.
SolutionSequence forward_sequence(const model::ModelParams& params,
                                  const model::SectorLabel& sector, double energy,
                                  std::size_t n_max);

// Miller backward recursion: start at M = n_max + buffer with S_{M+1} = 0 and
// a tiny seed for S_M, recurse down, normalize so S_0 = 1. Converges onto the
// minimal solution, so ratios are buffer-independent once the buffer is deep
// enough (doubling it moves S_1/S_0 by less than 1e-12 at typical couplings).
// buffer = 0 picks the default max(50, n_max). Throws
// MinimalSolutionUnavailable outside the normalizable regime and PoleArtifact
// when the minimal solution vanishes at n = 0 (E sits on a spectral-function
// pole, not an eigenvalue).
SolutionSequence backward_minimal(const model::ModelParams& params,
                                  const model::SectorLabel& sector, double energy,
                                  std::size_t n_max, std::size_t buffer = 0);

// |S_1/S_0 + c_0| with S the minimal solution: zero exactly at eigenvalues.
// The backward depth is chosen from the characteristic-root ratio so the
// returned residual resolves 1e-12 even near the regime boundary.
double pincherle_residual(const model::ModelParams& params, const model::SectorLabel& sector,
                          double energy);

// P_0..P_N evaluated at one energy.
OrthoPolySequence ortho_poly_sequence(const model::ModelParams& params,
                                      const model::SectorLabel& sector, double energy,
                                      std::size_t n_max);

// Number of eigenvalues of the depth-truncated sector operator strictly below
// the given energy. The polynomials P_n are, up to the factor g^n, the
// characteristic polynomials of that truncation, so the Sturm pivot sequence
//   d_0 = E - a_0,   d_n = E - a_n - b_n^2 / d_{n-1}
// (a_n the diagonal, b_n^2 = g^2 * prev(n) the squared off-diagonal) counts
// levels below E through its positive entries. Exact integer answer, no pole
// trouble: this is what locates an eigenvalue whose spectral-function zero
// sits too close to a pole for sign scanning to see. O(depth), monotone in
// energy at fixed depth.
std::size_t levels_below(const model::ModelParams& params, const model::SectorLabel& sector,
                         double energy, std::size_t depth);

}  // namespace rabicf::recurrence
