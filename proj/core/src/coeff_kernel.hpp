// coeff_kernel.hpp — internal per-sector coefficient kernel; validates once,
// then serves recurrence coefficients allocation-free in hot loops
#pragma once

#include <cmath>
#include <stdexcept>

#include "rabicf/errors.hpp"
#include "rabicf/model.hpp"
#include "rabicf/recurrence.hpp"

namespace rabicf::recurrence::detail {

struct CoeffKernel {
  model::Family family = model::Family::TwoMode;
  double omega = 0.0;
  double delta = 0.0;
  double g = 0.0;
  double base_sign = 1.0;  // parity sign at n = 0
  double kappa = 0.0;      // TwoMode
  int k = 1;               // KPhoton
  double q = 0.0;
  double kk = 1.0;         // k^k
  double energy = 0.0;

  static CoeffKernel make(const model::ModelParams& params, const model::SectorLabel& sector,
                          double energy) {
    model::validate_sector(params, sector);
    if (params.g == 0.0) {
      throw CouplingZero("coeff_at: the recurrence divides by g, which is zero");
    }
    if (!std::isfinite(energy)) {
      throw std::invalid_argument("coeff_at: energy must be finite");
    }
    CoeffKernel kern;
    kern.family = params.family;
    kern.omega = params.omega;
    kern.delta = params.delta;
    kern.g = params.g;
    kern.base_sign = model::parity_sign(sector.parity);
    kern.energy = energy;
    if (params.family == model::Family::TwoMode) {
      kern.kappa = sector.block.value();
    } else {
      kern.k = params.k;
      kern.q = sector.block.value();
      kern.kk = std::pow(static_cast<double>(params.k), params.k);
    }
    return kern;
  }

  double alternating(std::size_t n) const {
    return (n % 2 == 0) ? base_sign : -base_sign;
  }

  // Index product p(x) = prod_{j=1..k} (x + 1 + q - ((j-1)k + 1)/k^2).
  double index_product(double x) const {
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    double prod = 1.0;
    for (int j = 1; j <= k; ++j) {
      prod *= x + 1.0 + q - (static_cast<double>(j - 1) * k + 1.0) / k2;
    }
    return prod;
  }

  CoefficientPair at(std::size_t n) const {
    const double m = static_cast<double>(n);
    const double s = alternating(n);
    if (family == model::Family::TwoMode) {
      const double denom = (m + 1.0) * (m + 2.0 * kappa);
      return {(s * delta - energy + 2.0 * omega * (m + kappa - 0.5)) / (g * denom),
              1.0 / denom, n};
    }
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    const double denom = kk * index_product(m);
    return {(s * delta - energy + k * omega * (m + q - 1.0 / k2)) / (g * denom),
            1.0 / denom, n};
  }

  // Companion-polynomial pieces: the diagonal ladder term and the cleared
  // previous-index weight.
  double poly_lead(std::size_t n) const {
    const double m = static_cast<double>(n);
    if (family == model::Family::TwoMode) {
      return 2.0 * omega * (m + kappa - 0.5);
    }
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    return k * omega * (m + q - 1.0 / k2);
  }

  double poly_prev(std::size_t n) const {
    const double m = static_cast<double>(n);
    if (family == model::Family::TwoMode) {
      return m * (m + 2.0 * kappa - 1.0);
    }
    return kk * index_product(m - 1.0);
  }
};

}  // namespace rabicf::recurrence::detail
