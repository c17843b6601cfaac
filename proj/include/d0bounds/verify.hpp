#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "d0bounds/exec.hpp"

namespace d0b {

// Result of a randomized property run: how many sampled instances broke the
// property, with the first offender described for debugging.  max_delta is
// the largest absolute disagreement seen across finite comparisons (0 when
// the property has no numeric comparison).
struct PropertyReport {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double max_delta = 0.0;
  std::string first_failure;
};

// Greedy solver vs. the linear-program vertex oracle on random spectra:
// values must agree within 1e-12 (or both be infinite).
PropertyReport greedy_vs_lp_property(std::int64_t trials, std::uint64_t seed);

// Shape checks on random spectra: the value is nondecreasing in the
// smoothing budget, the zero budget reduces exactly to the unsmoothed
// divergence, and a distribution against itself gives -log2(1 - delta).
PropertyReport smoothing_shape_property(std::int64_t trials,
                                        std::uint64_t seed);

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::int64_t trials = 100000;  // Monte Carlo decoder trials per cell
  Exec exec = Exec::kParallel;
};

// Runs one of the self-check suites ("dpi", "greedy-vs-lp", "decoder-sim",
// "tiny-codes", "lemma2", or "all"), writing one PASS/FAIL line per check.
// Returns the number of failed checks; throws std::invalid_argument for an
// unknown suite name.
int run_verify(const std::string& suite, const VerifyOptions& opt,
               std::ostream& os);

}  // namespace d0b
