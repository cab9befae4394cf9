// Shared constructors for the unit suites.
#pragma once

#include <cstdint>

#include "rabicf/model.hpp"

namespace testutil {

inline rabicf::model::ModelParams two_mode(double omega, double delta, double g) {
  rabicf::model::ModelParams p;
  p.family = rabicf::model::Family::TwoMode;
  p.omega = omega;
  p.delta = delta;
  p.g = g;
  return p;
}

inline rabicf::model::ModelParams k_photon(int k, double omega, double delta, double g) {
  rabicf::model::ModelParams p;
  p.family = rabicf::model::Family::KPhoton;
  p.omega = omega;
  p.delta = delta;
  p.g = g;
  p.k = k;
  return p;
}

inline rabicf::model::SectorLabel sector(std::int64_t num, std::int64_t den,
                                         rabicf::model::Parity parity) {
  return {rabicf::model::Rational{num, den}, parity};
}

}  // namespace testutil
