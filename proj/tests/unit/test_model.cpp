#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "rabicf/errors.hpp"
#include "rabicf/model.hpp"

namespace {

using namespace rabicf;
using model::Family;
using model::Parity;
using model::Rational;
using model::RegimeVerdict;
using testutil::k_photon;
using testutil::two_mode;

}  // namespace

TEST_SUITE("model") {

TEST_CASE("rationals normalize on construction") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(-3, -3) == Rational(1, 1));
  CHECK(Rational(0, 7) == Rational(0, 1));
  CHECK(Rational(1, 2).den == 2);
  CHECK(Rational(3, -6).den == 2);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rationals order and print") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(3, 4) > Rational(1, 2));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(2, 2).str() == "1");
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(1, 2).value() == 0.5);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(two_mode(1.0, 0.7, 0.5).validate());
  CHECK_THROWS_AS(two_mode(0.0, 0.7, 0.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(two_mode(-1.0, 0.7, 0.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(two_mode(1.0, std::nan(""), 0.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(k_photon(0, 1.0, 0.3, 0.2).validate(), std::invalid_argument);
  CHECK_NOTHROW(k_photon(1, 1.0, 0.3, 0.2).validate());
}

TEST_CASE("block enumeration") {
  const auto tm = model::enumerate_blocks(two_mode(1.0, 0.0, 0.1), 4);
  REQUIRE(tm.size() == 4);
  CHECK(tm[0] == Rational(1, 2));
  CHECK(tm[1] == Rational(1, 1));
  CHECK(tm[2] == Rational(3, 2));
  CHECK(tm[3] == Rational(2, 1));

  const auto k3 = model::enumerate_blocks(k_photon(3, 1.0, 0.0, 0.1), 8);
  REQUIRE(k3.size() == 3);
  CHECK(k3[0] == Rational(1, 9));
  CHECK(k3[1] == Rational(4, 9));
  CHECK(k3[2] == Rational(7, 9));

  const auto k2 = model::enumerate_blocks(k_photon(2, 1.0, 0.0, 0.1), 1);
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == Rational(1, 4));

  CHECK_THROWS_AS(model::enumerate_blocks(two_mode(1.0, 0.0, 0.1), 0), std::invalid_argument);
}

TEST_CASE("regime classification across the coupling boundary") {
  // Two-mode: the constraint ratio is |g / omega|, boundary at 1.
  CHECK(model::classify_regime(two_mode(1.0, 0.7, 0.5)).verdict == RegimeVerdict::Normalizable);
  CHECK(model::classify_regime(two_mode(1.0, 0.7, 0.99)).verdict == RegimeVerdict::Normalizable);
  CHECK(model::classify_regime(two_mode(1.0, 0.7, 1.0)).verdict ==
        RegimeVerdict::NonNormalizable);
  CHECK(model::classify_regime(two_mode(1.0, 0.7, 1.5)).verdict ==
        RegimeVerdict::NonNormalizable);

  // k = 2: the constraint ratio is |2 g / omega|.
  CHECK(model::classify_regime(k_photon(2, 1.0, 0.3, 0.25)).verdict ==
        RegimeVerdict::Normalizable);
  CHECK(model::classify_regime(k_photon(2, 1.0, 0.3, 0.495)).verdict ==
        RegimeVerdict::Normalizable);
  CHECK(model::classify_regime(k_photon(2, 1.0, 0.3, 0.5)).verdict ==
        RegimeVerdict::NonNormalizable);
  CHECK(model::classify_regime(k_photon(2, 1.0, 0.3, 0.6)).verdict ==
        RegimeVerdict::NonNormalizable);

  // k = 1 is normalizable at any coupling; k >= 3 has no regular regime at all.
  CHECK(model::classify_regime(k_photon(1, 1.0, 0.3, 25.0)).verdict ==
        RegimeVerdict::Normalizable);
  CHECK(model::classify_regime(k_photon(3, 1.0, 0.3, 0.1)).verdict ==
        RegimeVerdict::UndefinedKGe3);
  CHECK(model::classify_regime(k_photon(5, 1.0, 0.3, 1e-3)).verdict ==
        RegimeVerdict::UndefinedKGe3);
}

TEST_CASE("regime ratio field carries the scale-free constraint") {
  const auto tm = model::classify_regime(two_mode(2.0, 0.7, 1.0));
  REQUIRE(tm.ratio.has_value());
  CHECK(*tm.ratio == 0.5);
  const auto k2 = model::classify_regime(k_photon(2, 2.0, 0.3, 0.5));
  REQUIRE(k2.ratio.has_value());
  CHECK(*k2.ratio == 0.5);
  CHECK_FALSE(model::classify_regime(k_photon(1, 1.0, 0.3, 2.0)).ratio.has_value());
  CHECK_FALSE(model::classify_regime(k_photon(3, 1.0, 0.3, 0.1)).ratio.has_value());
}

TEST_CASE("zero coupling classifies normalizable by convention") {
  CHECK(model::classify_regime(two_mode(1.0, 0.7, 0.0)).verdict == RegimeVerdict::Normalizable);
  CHECK(model::classify_regime(k_photon(2, 1.0, 0.3, 0.0)).verdict ==
        RegimeVerdict::Normalizable);
}

TEST_CASE("classification is scale invariant") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> gd(0.01, 2.0);
  std::uniform_real_distribution<double> ld(0.1, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double g = gd(rng);
    const double lambda = ld(rng);
    const auto base = model::classify_regime(two_mode(1.0, 0.7, g));
    const auto scaled = model::classify_regime(two_mode(lambda, 0.7 * lambda, g * lambda));
    CAPTURE(g);
    CAPTURE(lambda);
    CHECK(base.verdict == scaled.verdict);
  }
}

TEST_CASE("characteristic roots at pinned couplings") {
  const auto tm = model::characteristic_roots(two_mode(1.0, 0.7, 0.5));
  CHECK(tm.distinct_real);
  CHECK(std::abs(tm.t1.real() - (-0.26794919243112270)) < 1e-15);
  CHECK(std::abs(tm.t2.real() - (-3.7320508075688772)) < 1e-14);
  CHECK(tm.t1.imag() == 0.0);
  CHECK(tm.t2.imag() == 0.0);

  const auto k2 = model::characteristic_roots(k_photon(2, 1.0, 0.3, 0.25));
  CHECK(k2.distinct_real);
  CHECK(std::abs(k2.t1.real() - (-0.13397459621556135)) < 1e-15);
  CHECK(std::abs(k2.t2.real() - (-1.8660254037844386)) < 1e-15);

  // k = 1 degenerates to t^2 + (omega / g) t = 0.
  const auto k1 = model::characteristic_roots(k_photon(1, 1.0, 0.3, 0.3));
  CHECK(k1.distinct_real);
  CHECK(k1.t1 == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(k1.t2.real() - (-10.0 / 3.0)) < 1e-14);
}

TEST_CASE("characteristic roots outside the normalizable regime form a unit-modulus pair") {
  const auto tm = model::characteristic_roots(two_mode(1.0, 0.7, 1.5));
  CHECK_FALSE(tm.distinct_real);
  CHECK(std::abs(std::abs(tm.t1) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(tm.t2) - 1.0) < 1e-14);
  CHECK(tm.t1.imag() != 0.0);
}

TEST_CASE("characteristic roots satisfy their defining equation") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> od(0.5, 3.0);
  std::uniform_real_distribution<double> ud(0.05, 0.95);
  for (int i = 0; i < 1000; ++i) {
    const double omega = od(rng);
    const bool two = (i % 2 == 0);
    const double g = two ? ud(rng) * omega : 0.5 * ud(rng) * omega;
    const auto p = two ? two_mode(omega, 0.3, g) : k_photon(2, omega, 0.3, g);
    const auto roots = model::characteristic_roots(p);
    const double a = two ? 2.0 * omega / g : omega / (2.0 * g);
    const double b = two ? 1.0 : 0.25;
    CAPTURE(omega);
    CAPTURE(g);
    CHECK(std::abs(roots.t1 + roots.t2 + a) <= 1e-14 * a);
    CHECK(std::abs(roots.t1 * roots.t2 - b) <= 1e-14 * std::max(1.0, b));
    CHECK(std::abs(roots.t1) <= std::abs(roots.t2) + 1e-15);
  }
}

TEST_CASE("characteristic roots refuse degenerate inputs") {
  CHECK_THROWS_AS(model::characteristic_roots(two_mode(1.0, 0.7, 0.0)), CouplingZero);
  CHECK_THROWS_AS(model::characteristic_roots(k_photon(3, 1.0, 0.3, 0.1)),
                  NoCharacteristicEquation);
}

TEST_CASE("asymptotic exponents at pinned couplings") {
  const auto tm = model::asymptotic_exponents(two_mode(1.0, 0.7, 0.5));
  CHECK(tm.a == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(tm.alpha == -1.0);
  CHECK(tm.b == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tm.beta == -2.0);

  const auto k1 = model::asymptotic_exponents(k_photon(1, 1.0, 0.3, 0.3));
  CHECK(k1.a == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK(k1.alpha == 0.0);
  CHECK(k1.b == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k1.beta == -1.0);

  const auto k3 = model::asymptotic_exponents(k_photon(3, 1.0, 0.3, 0.1));
  CHECK(k3.a == doctest::Approx(10.0 / 9.0).epsilon(1e-14));
  CHECK(k3.alpha == -2.0);
  CHECK(k3.b == doctest::Approx(1.0 / 27.0).epsilon(1e-14));
  CHECK(k3.beta == -3.0);

  CHECK_THROWS_AS(model::asymptotic_exponents(two_mode(1.0, 0.7, 0.0)), CouplingZero);
}

TEST_CASE("growth-class slope test separates k >= 3 from the rest") {
  CHECK_FALSE(model::single_growth_class(model::asymptotic_exponents(two_mode(1.0, 0.7, 0.5))));
  CHECK_FALSE(
      model::single_growth_class(model::asymptotic_exponents(k_photon(1, 1.0, 0.3, 0.3))));
  CHECK_FALSE(
      model::single_growth_class(model::asymptotic_exponents(k_photon(2, 1.0, 0.3, 0.2))));
  CHECK(model::single_growth_class(model::asymptotic_exponents(k_photon(3, 1.0, 0.3, 0.1))));
  CHECK(model::single_growth_class(model::asymptotic_exponents(k_photon(4, 1.0, 0.3, 0.1))));
  CHECK(model::single_growth_class(model::asymptotic_exponents(k_photon(7, 1.0, 0.3, 0.1))));
}

TEST_CASE("fock offsets round-trip through block enumeration") {
  const auto k3 = k_photon(3, 1.0, 0.3, 0.1);
  CHECK(model::fock_offset(k3, Rational(1, 9)) == 0);
  CHECK(model::fock_offset(k3, Rational(4, 9)) == 1);
  CHECK(model::fock_offset(k3, Rational(7, 9)) == 2);
  const auto blocks = model::enumerate_blocks(k3, 10);
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    CHECK(model::fock_offset(k3, blocks[r]) == static_cast<int>(r));
  }
  CHECK_THROWS_AS(model::fock_offset(two_mode(1.0, 0.7, 0.5), Rational(1, 2)), BlockMismatch);
  CHECK_THROWS_AS(model::fock_offset(k_photon(2, 1.0, 0.3, 0.2), Rational(1, 2)),
                  BlockMismatch);
  CHECK_THROWS_AS(model::fock_offset(k3, Rational(10, 9)), BlockMismatch);
}

TEST_CASE("sector validation and labels") {
  const auto tm = two_mode(1.0, 0.7, 0.5);
  CHECK_NOTHROW(model::validate_sector(tm, testutil::sector(1, 2, Parity::Plus)));
  CHECK_NOTHROW(model::validate_sector(tm, testutil::sector(3, 2, Parity::Minus)));
  CHECK_THROWS_AS(model::validate_sector(tm, testutil::sector(1, 4, Parity::Plus)),
                  BlockMismatch);
  CHECK_THROWS_AS(model::validate_sector(tm, testutil::sector(-1, 2, Parity::Plus)),
                  BlockMismatch);
  const auto k2 = k_photon(2, 1.0, 0.3, 0.2);
  CHECK_NOTHROW(model::validate_sector(k2, testutil::sector(3, 4, Parity::Plus)));
  CHECK_THROWS_AS(model::validate_sector(k2, testutil::sector(1, 2, Parity::Plus)),
                  BlockMismatch);

  CHECK(testutil::sector(1, 2, Parity::Plus).str() == "(block 1/2, parity +)");
  CHECK(testutil::sector(3, 4, Parity::Minus).str() == "(block 3/4, parity -)");
  CHECK(model::parity_sign(Parity::Plus) == 1.0);
  CHECK(model::parity_sign(Parity::Minus) == -1.0);
  CHECK(model::parity_char(Parity::Minus) == '-');
}

}  // TEST_SUITE
