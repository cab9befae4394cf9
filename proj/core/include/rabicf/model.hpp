// model.hpp — model families, sector labels, regime classification
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rabicf::model {

// Exact fraction for sector labels: the Bargmann index kappa of the two-mode
// model (1/2, 1, 3/2, ...) or the spectral offset q of the k-photon model
// ((r k + 1) / k^2 for r = 0..k-1). Kept as integers so sectors compare
// exactly and survive serialization round trips.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);  // normalizes; throws on d == 0

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;  // "1/2", "1", "3/4"

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

enum class Family {
  TwoMode,  // two boson modes, pair creation/annihilation coupling
  KPhoton,  // one boson mode, k-photon coupling
};

enum class Parity { Plus, Minus };

inline double parity_sign(Parity p) { return p == Parity::Plus ? 1.0 : -1.0; }
inline char parity_char(Parity p) { return p == Parity::Plus ? '+' : '-'; }

struct ModelParams {
  Family family = Family::TwoMode;
  double omega = 1.0;  // field frequency, > 0
  double delta = 0.0;  // level splitting (negative values mirror the parity sectors)
  double g = 0.0;      // coupling strength
  int k = 1;           // photon multiplicity, KPhoton only

  void validate() const;  // throws std::invalid_argument
};

// One invariant subspace: a block label (kappa or q) plus the Z2 parity that
// splits each block in two.
struct SectorLabel {
  Rational block;
  Parity parity = Parity::Plus;

  std::string str() const;  // "(block 1/2, parity +)"
};

enum class RegimeVerdict {
  Normalizable,     // a minimal recurrence solution exists; regular spectrum is defined
  NonNormalizable,  // characteristic roots sit on the unit-modulus boundary or beyond
  UndefinedKGe3,    // k >= 3: every solution shares one growth class
};

struct RegimeClass {
  RegimeVerdict verdict = RegimeVerdict::Normalizable;
  // |g/omega| for TwoMode, |2g/omega| for KPhoton k = 2; no constraint ratio
  // exists for k = 1 (always normalizable) or k >= 3.
  std::optional<double> ratio;
};

// Roots of the limiting characteristic equation t^2 + a t + b = 0 of the
// sector recurrence, sorted |t1| <= |t2|. Real and distinct exactly in the
// normalizable regime; a unit-ratio conjugate pair (or double root) outside
// it. For k = 1 the limit equation degenerates to t^2 + (omega/g) t = 0.
struct CharacteristicRoots {
  std::complex<double> t1;
  std::complex<double> t2;
  bool distinct_real = false;
};

// Leading behavior of the recurrence coefficients, A_n ~ a n^alpha and
// B_n ~ b n^beta as n grows.
struct AsymptoticExponents {
  double a = 0.0;
  double alpha = 0.0;
  double b = 0.0;
  double beta = 0.0;
};

// First max_blocks block labels: kappa = 1/2, 1, 3/2, ... for TwoMode, the k
// admissible offsets q for KPhoton (fewer when k < max_blocks).
std::vector<Rational> enumerate_blocks(const ModelParams& params, int max_blocks);

// Decides whether minimal solutions (hence a regular spectrum) exist. By
// convention g = 0 classifies Normalizable for every family: the free model
// is diagonal and its spectrum is served by the truncation oracle.
RegimeClass classify_regime(const ModelParams& params);

// Throws CouplingZero when g = 0 and NoCharacteristicEquation when the
// k-photon multiplicity is 3 or larger.
CharacteristicRoots characteristic_roots(const ModelParams& params);

// Throws CouplingZero when g = 0.
AsymptoticExponents asymptotic_exponents(const ModelParams& params);

// Newton-Puiseux slope test on the points (0,0), (1,alpha), (2,beta): true
// when the middle point lies strictly below the chord, in which case every
// recurrence solution shares one growth class and no characteristic equation
// exists. Holds exactly for KPhoton with k >= 3.
inline bool single_growth_class(const AsymptoticExponents& e) {
  return e.alpha < 0.5 * e.beta;
}

// Fock offset r of a k-photon block, i.e. the residue class of photon number
// the sector lives on: q = (r k + 1) / k^2. Throws BlockMismatch for TwoMode
// or for a q no offset produces.
int fock_offset(const ModelParams& params, const Rational& block);

// Throws BlockMismatch unless the sector belongs to this model.
void validate_sector(const ModelParams& params, const SectorLabel& sector);

}  // namespace rabicf::model
