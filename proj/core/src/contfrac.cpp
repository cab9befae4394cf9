// contfrac.cpp — spectral function via the b0-seeded Lentz loop
#include "rabicf/contfrac.hpp"

#include <string>

#include "coeff_kernel.hpp"
#include "rabicf/errors.hpp"
#include "rabicf/recurrence.hpp"

namespace rabicf::contfrac {

CFResult spectral_function(const model::ModelParams& params, const model::SectorLabel& sector,
                           double energy, const CFOptions& opt) {
  const auto regime = model::classify_regime(params);
  if (regime.verdict != model::RegimeVerdict::Normalizable) {
    throw RegimeUnsupported("spectral_function: eigenvalue fraction requires the normalizable "
                            "regime, sector " + sector.str());
  }

  // Same modified Lentz update as evaluate_cf, seeded with the b_0 = c_0 term
  // so the whole of F accumulates in f: partial numerators -d_j, partial
  // denominators c_j.
  const auto kern = recurrence::detail::CoeffKernel::make(params, sector, energy);
  CFResult res;
  res.iterations = 0;
  int last_guard = -100;
  double f = kern.at(0).c;
  if (f == 0.0) {
    f = kLentzTiny;
    last_guard = 0;
  }
  double c = f;
  double d = 0.0;
  for (int j = 1; j <= opt.max_terms; ++j) {
    const auto cf = kern.at(static_cast<std::size_t>(j));
    const double aj = -cf.d;
    const double bj = cf.c;
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
  if (!res.converged) {
    throw NoConvergence("spectral_function: fraction still moving after " +
                        std::to_string(opt.max_terms) + " terms at E = " +
                        std::to_string(energy));
  }
  res.value = f;
  res.suspected_pole = (last_guard >= res.iterations - 5) || !std::isfinite(f);
  return res;
}

}  // namespace rabicf::contfrac
