// contfrac.hpp — modified Lentz evaluation and the spectral function
#pragma once

#include <cmath>
#include <cstddef>

#include "rabicf/model.hpp"

namespace rabicf::contfrac {

struct CFResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  // A tiny-denominator guard fired within the last five iterations, or the
  // value left the finite range: the point likely sits near a pole of the
  // fraction, so a sign change against a neighbor is not trustworthy.
  bool suspected_pole = false;
};

struct CFOptions {
  double tol = 1e-14;      // stop when |C_j D_j - 1| drops below this
  int max_terms = 100000;  // iteration cap before NoConvergence
};

// Floor substituted for vanishing working denominators in the Lentz loops.
inline constexpr double kLentzTiny = 1e-30;

// Evaluates K_{j>=1}(a_j / b_j) = a_1 / (b_1 + a_2 / (b_2 + ...)) with the
// modified Lentz iteration. The generators are called with j = 1, 2, ...,
// each index exactly once per evaluation. A leading zero numerator ends the
// fraction immediately with value zero.
template <class NumFn, class DenFn>
CFResult evaluate_cf(NumFn&& num, DenFn&& den, const CFOptions& opt = {}) {
  CFResult res;
  res.iterations = 1;
  const double a1 = num(1);
  if (a1 == 0.0) {
    res.converged = true;
    return res;
  }
  int last_guard = -100;
  double f = den(1);
  if (f == 0.0) {
    f = kLentzTiny;
    last_guard = 1;
  }
  double c = f;
  double d = 0.0;
  for (int j = 2; j <= opt.max_terms; ++j) {
    const double aj = num(j);
    const double bj = den(j);
    d = bj + aj * d;
    if (d == 0.0) {
      d = kLentzTiny;
      last_guard = j;
    }
    c = bj + aj / c;
    if (c == 0.0) {
      c = kLentzTiny;
      last_guard = j;
    }
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    res.iterations = j;
    if (std::abs(delta - 1.0) < opt.tol) {
      res.converged = true;
      break;
    }
  }
  res.value = a1 / f;
  res.suspected_pole = (last_guard >= res.iterations - 5) || !std::isfinite(res.value);
  return res;
}

// The eigenvalue function of one sector,
//   F(E) = c_0(E) - d_1 / (c_1(E) - d_2 / (c_2(E) - ...)),
// whose zeros are the regular eigenvalues. Evaluated by the same Lentz
// iteration seeded with the leading c_0 term. Throws RegimeUnsupported
// outside the normalizable regime, CouplingZero at g = 0, and NoConvergence
// if the fraction exhausts max_terms.
CFResult spectral_function(const model::ModelParams& params, const model::SectorLabel& sector,
                           double energy, const CFOptions& opt = {});

}  // namespace rabicf::contfrac
