#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "d0bounds/distribution.hpp"
#include "d0bounds/spectrum.hpp"

using namespace d0b;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FiniteDistribution dist(std::vector<double> w) { return normalize(w); }

}  // namespace

TEST_CASE("build groups an alphabet by likelihood ratio") {
  // P concentrated where Q spreads: one atom at ratio log2(1/0.5) = 1.
  const RatioSpectrum a = RatioSpectrum::build(dist({1.0, 0.0}), dist({0.5, 0.5}));
  REQUIRE(a.size() == 1);
  CHECK(a.atoms()[0].log_ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.atoms()[0].p_mass.linear() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.atoms()[0].q_mass.linear() == doctest::Approx(0.5).epsilon(1e-15));

  // Identical pair collapses to the unit atom.
  const RatioSpectrum b = RatioSpectrum::build(dist({0.5, 0.5}), dist({0.5, 0.5}));
  REQUIRE(b.size() == 1);
  CHECK(b.atoms()[0].log_ratio == 0.0);
  CHECK(b.atoms()[0].p_mass.linear() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.atoms()[0].q_mass.linear() == doctest::Approx(1.0).epsilon(1e-15));

  // P charging a Q-null symbol produces the +inf atom, sorted first.
  const RatioSpectrum c = RatioSpectrum::build(dist({0.5, 0.5}), dist({1.0, 0.0}));
  REQUIRE(c.size() == 2);
  CHECK(c.atoms()[0].log_ratio == kInf);
  CHECK(c.atoms()[0].p_mass.linear() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.atoms()[0].q_mass.is_zero());
  CHECK(c.atoms()[1].log_ratio == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(c.atoms()[1].q_mass.linear() == doctest::Approx(1.0).epsilon(1e-15));

  // Equal ratios merge: symbols 0 and 1 both have P/Q = 2.
  const RatioSpectrum d =
      RatioSpectrum::build(dist({0.25, 0.25, 0.5}), dist({0.125, 0.125, 0.75}));
  REQUIRE(d.size() == 2);
  CHECK(d.atoms()[0].log_ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.atoms()[0].p_mass.linear() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.atoms()[0].q_mass.linear() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d.atoms()[1].p_mass.linear() == doctest::Approx(0.5).epsilon(1e-14));

  // Zero-P symbols are dropped entirely.
  const RatioSpectrum e = RatioSpectrum::build(dist({1.0, 0.0}), dist({0.25, 0.75}));
  REQUIRE(e.size() == 1);

  // Alphabet mismatch is rejected.
  CHECK_THROWS(RatioSpectrum::build(dist({0.5, 0.5}), dist({0.2, 0.3, 0.5})));
}

TEST_CASE("from_atoms canonicalizes raw lists") {
  // Atoms carry ratio = log2(p/q); equal-ratio groups merge and the zero-P
  // atom disappears.
  std::vector<SpectrumAtom> raw = {
      {-1.0, LogProb::from_linear(0.2), LogProb::from_linear(0.4)},
      {1.0, LogProb::from_linear(0.3), LogProb::from_linear(0.15)},
      {1.0, LogProb::from_linear(0.2), LogProb::from_linear(0.1)},
      {0.0, LogProb::zero(), LogProb::from_linear(0.3)},  // zero-P: dropped
      {-1.0, LogProb::from_linear(0.3), LogProb::from_linear(0.6)},
  };
  const RatioSpectrum s = RatioSpectrum::from_atoms(std::move(raw));
  REQUIRE(s.size() == 2);
  CHECK(s.atoms()[0].log_ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.atoms()[0].p_mass.linear() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.atoms()[0].q_mass.linear() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s.atoms()[1].log_ratio == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s.atoms()[1].p_mass.linear() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.atoms()[1].q_mass.linear() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(s.total_p().linear() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.total_q().linear() == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("convolution with the unit atom is the identity") {
  const RatioSpectrum s =
      RatioSpectrum::build(dist({0.11, 0.89}), dist({0.5, 0.5}));
  const RatioSpectrum unit = convolve_power(s, 0);
  REQUIRE(unit.size() == 1);
  CHECK(unit.atoms()[0].log_ratio == 0.0);
  CHECK(unit.atoms()[0].p_mass.log2() == 0.0);
  CHECK(unit.atoms()[0].q_mass.log2() == 0.0);

  const RatioSpectrum back = convolve_spectra(s, unit);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.atoms()[i].log_ratio ==
          doctest::Approx(s.atoms()[i].log_ratio).epsilon(1e-15));
    CHECK(back.atoms()[i].p_mass.log2() ==
          doctest::Approx(s.atoms()[i].p_mass.log2()).epsilon(1e-15));
  }
}

TEST_CASE("two-fold convolution of the crossover pair") {
  // Bern(0.11) against Bern(0.5): squaring gives the three Hamming-weight
  // atoms with binomial masses.
  const RatioSpectrum s =
      RatioSpectrum::build(dist({0.89, 0.11}), dist({0.5, 0.5}));
  const RatioSpectrum s2 = convolve_spectra(s, s);
  REQUIRE(s2.size() == 3);
  CHECK(s2.atoms()[0].p_mass.linear() == doctest::Approx(0.7921).epsilon(1e-13));
  CHECK(s2.atoms()[1].p_mass.linear() == doctest::Approx(0.1958).epsilon(1e-13));
  CHECK(s2.atoms()[2].p_mass.linear() == doctest::Approx(0.0121).epsilon(1e-13));
  CHECK(s2.atoms()[0].q_mass.linear() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(s2.atoms()[1].q_mass.linear() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(s2.atoms()[2].q_mass.linear() == doctest::Approx(0.25).epsilon(1e-13));
  // Ratios add: top atom is 2 * log2(2 * 0.89).
  CHECK(s2.atoms()[0].log_ratio ==
        doctest::Approx(2.0 * std::log2(1.78)).epsilon(1e-14));
}

TEST_CASE("convolve_power matches iterated convolution and conserves mass") {
  const RatioSpectrum s =
      RatioSpectrum::build(dist({0.6, 0.3, 0.1}), dist({0.2, 0.3, 0.5}));

  RatioSpectrum iter = convolve_power(s, 1);
  for (int i = 1; i < 5; ++i) iter = convolve_spectra(iter, s);
  const RatioSpectrum pow5 = convolve_power(s, 5);

  REQUIRE(pow5.size() == iter.size());
  for (std::size_t i = 0; i < pow5.size(); ++i) {
    CHECK(pow5.atoms()[i].log_ratio ==
          doctest::Approx(iter.atoms()[i].log_ratio).epsilon(1e-12));
    CHECK(pow5.atoms()[i].p_mass.linear() ==
          doctest::Approx(iter.atoms()[i].p_mass.linear()).epsilon(1e-12));
    CHECK(pow5.atoms()[i].q_mass.linear() ==
          doctest::Approx(iter.atoms()[i].q_mass.linear()).epsilon(1e-12));
  }

  const RatioSpectrum pow6 = convolve_power(s, 6);
  CHECK(std::fabs(pow6.total_p().linear() - 1.0) <= 1e-12);
  CHECK(std::fabs(pow6.total_q().linear() - 1.0) <= 1e-12);

  // Ratios stay strictly descending through the merge machinery.
  for (std::size_t i = 1; i < pow6.size(); ++i)
    CHECK(pow6.atoms()[i - 1].log_ratio > pow6.atoms()[i].log_ratio);
}

TEST_CASE("merge tolerance clusters nearby ratios") {
  // Two atoms 1e-10 apart in log-ratio: the default 1e-9 tolerance merges
  // them, a 1e-12 tolerance keeps them separate.
  std::vector<SpectrumAtom> near = {
      {1e-10, LogProb::from_linear(0.5), LogProb::from_linear(0.5)},
      {0.0, LogProb::from_linear(0.5), LogProb::from_linear(0.5)},
  };
  const RatioSpectrum a = RatioSpectrum::from_atoms(std::move(near));
  REQUIRE(a.size() == 2);  // exact-equality merge keeps them apart

  const RatioSpectrum unit = convolve_power(a, 0);
  const RatioSpectrum merged = convolve_spectra(a, unit, 1e-9);
  CHECK(merged.size() == 1);
  CHECK(merged.atoms()[0].p_mass.linear() == doctest::Approx(1.0).epsilon(1e-14));

  const RatioSpectrum kept = convolve_spectra(a, unit, 1e-12);
  CHECK(kept.size() == 2);
}
