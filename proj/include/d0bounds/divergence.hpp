#pragma once

#include "d0bounds/distribution.hpp"
#include "d0bounds/spectrum.hpp"

namespace d0b {

/// Randomized likelihood-ratio threshold test on a spectrum: accept (Phi = 1)
/// strictly above boundary_log_ratio, accept with probability gamma on the
/// boundary atom, reject below. boundary = +inf with gamma = 0 is the
/// all-reject test.
struct ThresholdTest {
  double boundary_log_ratio;
  double gamma;  // in [0, 1]
};

/// What a threshold test captures of each measure.
struct TestCapture {
  double p_mass;          // linear
  LogProb q_mass;         // log domain
  double q_mass_linear;   // linear; 0 when the log value underflows double
};

/// Evaluates a test against a spectrum. The boundary is matched by exact
/// ratio equality, which is the right notion for tests produced from the
/// same spectrum's atoms.
TestCapture evaluate_test(const RatioSpectrum& s, const ThresholdTest& t);

/// Order-0 divergence of the pair behind the spectrum: -log2 of the Q-mass
/// of P's support. +inf when Q vanishes on all of it.
double renyi0_divergence(const RatioSpectrum& s);

/// Result of the smoothed order-0 divergence: the optimizing test, its value
/// -log2(captured Q), and what it captures.
struct D0Result {
  double value;  // bits; +inf when only zero-Q atoms are needed
  ThresholdTest test;
  double p_captured;
  LogProb q_captured;
  double q_captured_linear;
};

/// Smoothed order-0 divergence: the best test with P-acceptance >= 1 - delta,
/// scored by -log2 of its Q-acceptance. Exactly solved by a greedy
/// fractional fill in descending-ratio order (this linear program is a
/// fractional knapsack, so the exchange argument makes the greedy optimal).
/// delta = 0 reduces exactly to renyi0_divergence. Throws std::domain_error
/// for delta outside [0, 1].
D0Result smooth0_divergence(const RatioSpectrum& s, double delta);

/// KL divergence in bits; +inf as soon as P charges a symbol Q misses.
/// Alphabet mismatch throws std::domain_error.
double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

}  // namespace d0b
