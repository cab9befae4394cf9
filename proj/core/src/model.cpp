// model.cpp — regime classification and sector bookkeeping
#include "rabicf/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rabicf/errors.hpp"

namespace rabicf::model {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) {
    return std::to_string(num);
  }
  return std::to_string(num) + "/" + std::to_string(den);
}

void ModelParams::validate() const {
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw std::invalid_argument("ModelParams: omega must be positive and finite");
  }
  if (!std::isfinite(delta) || !std::isfinite(g)) {
    throw std::invalid_argument("ModelParams: delta and g must be finite");
  }
  if (family == Family::KPhoton && k < 1) {
    throw std::invalid_argument("ModelParams: k must be at least 1");
  }
}

std::string SectorLabel::str() const {
  std::string s = "(block ";
  s += block.str();
  s += ", parity ";
  s += parity_char(parity);
  s += ")";
  return s;
}

std::vector<Rational> enumerate_blocks(const ModelParams& params, int max_blocks) {
  params.validate();
  if (max_blocks < 1) {
    throw std::invalid_argument("enumerate_blocks: max_blocks must be positive");
  }
  std::vector<Rational> blocks;
  if (params.family == Family::TwoMode) {
    blocks.reserve(static_cast<std::size_t>(max_blocks));
    for (int j = 1; j <= max_blocks; ++j) {
      blocks.emplace_back(j, 2);  // kappa = 1/2, 1, 3/2, ...
    }
  } else {
    const auto k = static_cast<std::int64_t>(params.k);
    const int count = std::min(max_blocks, params.k);
    blocks.reserve(static_cast<std::size_t>(count));
    for (std::int64_t r = 0; r < count; ++r) {
      blocks.emplace_back(r * k + 1, k * k);  // q = (r k + 1) / k^2
    }
  }
  return blocks;
}

RegimeClass classify_regime(const ModelParams& params) {
  params.validate();
  if (params.family == Family::TwoMode) {
    const double ratio = std::abs(params.g) / params.omega;
    return {ratio < 1.0 ? RegimeVerdict::Normalizable : RegimeVerdict::NonNormalizable,
            ratio};
  }
  if (params.k == 1) {
    return {RegimeVerdict::Normalizable, std::nullopt};
  }
  if (params.k == 2) {
    const double ratio = 2.0 * std::abs(params.g) / params.omega;
    return {ratio < 1.0 ? RegimeVerdict::Normalizable : RegimeVerdict::NonNormalizable,
            ratio};
  }
  if (params.g == 0.0) {
    return {RegimeVerdict::Normalizable, std::nullopt};
  }
  return {RegimeVerdict::UndefinedKGe3, std::nullopt};
}

namespace {

// Roots of t^2 + 2 u t + prod = 0 with real u and root product prod > 0,
// sorted by modulus. The large root is computed without cancellation and the
// small one recovered from the product, so t1 * t2 = prod holds to round-off.
CharacteristicRoots quadratic_roots(double u, double prod) {
  CharacteristicRoots roots;
  const double disc = u * u - prod;
  if (disc > 0.0) {
    const double big = -(u + std::copysign(std::sqrt(disc), u));
    roots.t2 = big;
    roots.t1 = prod / big;
    roots.distinct_real = true;
  } else {
    // Conjugate pair (or double root when disc == 0), modulus sqrt(prod).
    const double im = std::sqrt(-disc);
    roots.t1 = {-u, im};
    roots.t2 = {-u, -im};
    roots.distinct_real = false;
  }
  return roots;
}

}  // namespace

CharacteristicRoots characteristic_roots(const ModelParams& params) {
  params.validate();
  if (params.g == 0.0) {
    throw CouplingZero("characteristic_roots: g = 0 has no coupled recurrence");
  }
  if (params.family == Family::TwoMode) {
    // t^2 + (2 omega / g) t + 1 = 0
    return quadratic_roots(params.omega / params.g, 1.0);
  }
  if (params.k == 1) {
    // Limit equation t^2 + (omega / g) t = 0: roots 0 and -omega/g.
    CharacteristicRoots roots;
    roots.t1 = 0.0;
    roots.t2 = -params.omega / params.g;
    roots.distinct_real = true;
    return roots;
  }
  if (params.k == 2) {
    // t^2 + (omega / 2 g) t + 1/4 = 0
    return quadratic_roots(params.omega / (4.0 * params.g), 0.25);
  }
  throw NoCharacteristicEquation(
      "characteristic_roots: k >= 3 has one growth class, no two-root limit equation");
}

AsymptoticExponents asymptotic_exponents(const ModelParams& params) {
  params.validate();
  if (params.g == 0.0) {
    throw CouplingZero("asymptotic_exponents: g = 0 has no coupled recurrence");
  }
  if (params.family == Family::TwoMode) {
    return {2.0 * params.omega / params.g, -1.0, 1.0, -2.0};
  }
  const double kk = std::pow(static_cast<double>(params.k), params.k);
  return {params.omega * static_cast<double>(params.k) / (params.g * kk), -(params.k - 1.0),
          1.0 / kk, -static_cast<double>(params.k)};
}

int fock_offset(const ModelParams& params, const Rational& block) {
  params.validate();
  if (params.family != Family::KPhoton) {
    throw BlockMismatch("fock_offset: two-mode blocks carry no Fock offset");
  }
  // Invert q = (r k + 1) / k^2 exactly: r = (k^2 q - 1) / k.
  const auto k = static_cast<std::int64_t>(params.k);
  const std::int64_t top = k * k * block.num - block.den;
  if (top % (k * block.den) != 0) {
    throw BlockMismatch("fock_offset: block " + block.str() + " is not of the form (r k + 1)/k^2");
  }
  const std::int64_t r = top / (k * block.den);
  if (r < 0 || r >= k) {
    throw BlockMismatch("fock_offset: offset of block " + block.str() + " lies outside 0..k-1");
  }
  return static_cast<int>(r);
}

void validate_sector(const ModelParams& params, const SectorLabel& sector) {
  params.validate();
  if (params.family == Family::TwoMode) {
    const bool half_integer = (sector.block.den == 1 || sector.block.den == 2);
    if (!half_integer || sector.block.num < 1) {
      throw BlockMismatch("validate_sector: two-mode block must be a positive half-integer, got " +
                          sector.block.str());
    }
    return;
  }
  fock_offset(params, sector.block);  // throws on mismatch
}

}  // namespace rabicf::model
