#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "d0bounds/divergence.hpp"
#include "d0bounds/rng.hpp"
#include "d0bounds/spectrum.hpp"

using namespace d0b;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FiniteDistribution dist(std::vector<double> w) { return normalize(w); }

}  // namespace

TEST_CASE("renyi0_divergence is -log2 of Q's mass on P's support") {
  CHECK(renyi0_divergence(RatioSpectrum::build(dist({1.0, 0.0}), dist({0.5, 0.5}))) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(renyi0_divergence(RatioSpectrum::build(dist({0.5, 0.5}), dist({0.9, 0.1}))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // Q vanishing on all of P's support drives the value to +inf.
  CHECK(renyi0_divergence(RatioSpectrum::build(dist({1.0, 0.0}), dist({0.0, 1.0}))) ==
        kInf);
}

TEST_CASE("smooth0_divergence frozen examples") {
  // No smoothing budget: reduces to the unsmoothed divergence.
  const D0Result a =
      smooth0_divergence(RatioSpectrum::build(dist({1.0, 0.0}), dist({0.5, 0.5})), 0.0);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.p_captured == doctest::Approx(1.0).epsilon(1e-15));

  // Budget 0.5 on the 5:1 / (1/9) spectrum: drop the low-ratio atom entirely
  // and keep the P/Q = 5 atom with gamma = 1.
  const D0Result b =
      smooth0_divergence(RatioSpectrum::build(dist({0.5, 0.5}), dist({0.9, 0.1})), 0.5);
  CHECK(b.value == doctest::Approx(-std::log2(0.1)).epsilon(1e-12));
  CHECK(b.test.boundary_log_ratio == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  CHECK(b.test.gamma == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.p_captured == doctest::Approx(0.5).epsilon(1e-12));

  // Identical pair: the budget is spent fractionally on the single atom.
  const D0Result c =
      smooth0_divergence(RatioSpectrum::build(dist({0.5, 0.5}), dist({0.5, 0.5})), 0.25);
  CHECK(c.value == doctest::Approx(-std::log2(0.75)).epsilon(1e-12));
  CHECK(c.test.gamma == doctest::Approx(0.75).epsilon(1e-12));

  CHECK_THROWS_AS(
      smooth0_divergence(RatioSpectrum::build(dist({0.5, 0.5}), dist({0.5, 0.5})), -0.1),
      std::domain_error);
  CHECK_THROWS_AS(
      smooth0_divergence(RatioSpectrum::build(dist({0.5, 0.5}), dist({0.5, 0.5})), 1.1),
      std::domain_error);
}

TEST_CASE("zero budget agrees exactly with renyi0 on random spectra") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    const int k = 2 + static_cast<int>(rng.next_below(8));
    const FiniteDistribution p = normalize(random_weights(rng, k));
    const FiniteDistribution q = normalize(random_weights(rng, k));
    const RatioSpectrum s = RatioSpectrum::build(p, q);
    CHECK(smooth0_divergence(s, 0.0).value == renyi0_divergence(s));
  }
}

TEST_CASE("the boundary fraction is exact") {
  // Atoms with P-masses (0.5, 0.3, 0.2): budget 0.35 keeps atom 0 whole and
  // half of atom 1.
  std::vector<SpectrumAtom> atoms = {
      {2.0, LogProb::from_linear(0.5), LogProb::from_linear(0.1)},
      {1.0, LogProb::from_linear(0.3), LogProb::from_linear(0.4)},
      {0.0, LogProb::from_linear(0.2), LogProb::from_linear(0.5)},
  };
  const RatioSpectrum s = RatioSpectrum::from_atoms(std::move(atoms));
  const D0Result r = smooth0_divergence(s, 0.35);
  CHECK(r.test.boundary_log_ratio == 1.0);
  CHECK(r.test.gamma == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(-std::log2(0.1 + 0.5 * 0.4)).epsilon(1e-12));
  CHECK(r.p_captured == doctest::Approx(0.65).epsilon(1e-12));
}

TEST_CASE("evaluate_test reproduces the optimizer's capture") {
  SplitMix64 rng(99);
  for (int t = 0; t < 30; ++t) {
    const int k = 2 + static_cast<int>(rng.next_below(10));
    const FiniteDistribution p = normalize(random_weights(rng, k));
    const FiniteDistribution q = normalize(random_weights(rng, k));
    const RatioSpectrum s = RatioSpectrum::build(p, q);
    const double delta = rng.next_unit();

    const D0Result r = smooth0_divergence(s, delta);
    const TestCapture cap = evaluate_test(s, r.test);
    CHECK(cap.p_mass == doctest::Approx(r.p_captured).epsilon(1e-12));
    if (!r.q_captured.is_zero())
      CHECK(cap.q_mass.log2() == doctest::Approx(r.q_captured.log2()).epsilon(1e-12));
    else
      CHECK(cap.q_mass.is_zero());
  }

  // The all-reject test captures nothing.
  const RatioSpectrum s = RatioSpectrum::build(dist({0.5, 0.5}), dist({0.9, 0.1}));
  const TestCapture none = evaluate_test(s, ThresholdTest{kInf, 0.0});
  CHECK(none.p_mass == 0.0);
  CHECK(none.q_mass.is_zero());
  CHECK(none.q_mass_linear == 0.0);
}

TEST_CASE("kl_divergence examples") {
  CHECK(kl_divergence(dist({0.5, 0.5}), dist({0.5, 0.5})) == 0.0);
  CHECK(kl_divergence(dist({1.0, 0.0}), dist({0.5, 0.5})) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const double expected =
      0.11 * std::log2(0.11 / 0.5) + 0.89 * std::log2(0.89 / 0.5);
  CHECK(kl_divergence(dist({0.11, 0.89}), dist({0.5, 0.5})) ==
        doctest::Approx(expected).epsilon(1e-14));

  CHECK(kl_divergence(dist({0.5, 0.5}), dist({1.0, 0.0})) == kInf);
  CHECK_THROWS_AS(kl_divergence(dist({0.5, 0.5}), dist({0.2, 0.3, 0.5})),
                  std::domain_error);
}

TEST_CASE("smoothing value is nondecreasing in the budget") {
  const RatioSpectrum s =
      RatioSpectrum::build(dist({0.4, 0.3, 0.2, 0.1}), dist({0.1, 0.2, 0.3, 0.4}));
  double prev = -kInf;
  for (double delta : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double v = smooth0_divergence(s, delta).value;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}
