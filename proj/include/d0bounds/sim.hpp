#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "d0bounds/distribution.hpp"
#include "d0bounds/divergence.hpp"
#include "d0bounds/exec.hpp"
#include "d0bounds/spectrum.hpp"

namespace d0b {

// Outcome of a Monte Carlo run of the threshold-test decoder.
struct SimReport {
  std::int64_t trials = 0;
  std::int64_t errors_observed = 0;
  double error_estimate = 0.0;  // errors_observed / trials
  double std_err = 0.0;         // binomial standard error of the estimate
  double bound_rhs = 0.0;       // (1 - P[accept]) + (m-1) * Q[accept]
  std::uint64_t seed = 0;
};

// Random-coding experiment: draw m codewords i.i.d. from `input`, send a
// uniform message through `w`, and decode by accepting exactly the codewords
// whose likelihood-ratio score passes `test` (with the test's boundary
// randomization).  An error is counted unless the accepted set is exactly
// the sent message.  The union bound promises
//   P[error] <= (1 - P[test accepts]) + (m - 1) * Q[test accepts],
// which is reported as bound_rhs for comparison against the estimate.
//
// Scores are matched to the test boundary within 1e-9 because the spectrum's
// merged atoms can differ from per-pair ratios by rounding.
SimReport simulate_phi_decoder(const TransitionKernel& w,
                               const FiniteDistribution& input,
                               const ThresholdTest& test, int m,
                               std::int64_t trials, std::uint64_t seed,
                               Exec exec);

// Independent check of the greedy smoothed-divergence solver: solves the
// underlying linear program
//   minimize sum_i g_i * q_i   s.t.  sum_i g_i * p_i >= 1 - delta, g in [0,1]
// by enumerating its vertices (every subset at g=1 plus at most one
// fractional coordinate).  Exponential in the atom count, so the spectrum is
// capped at 20 atoms.  Returns -log2 of the optimum, +inf when it is zero.
double lp_oracle_smooth0(const RatioSpectrum& s, double delta);

// Exhaustive search over all encoders f: messages -> channel inputs for the
// smallest error probability achievable with m messages and an optimal
// decoder under a uniform prior:  P[error] = 1 - (1/m) sum_y max_j W(y|f_j).
// Ties are broken toward the lexicographically smallest encoder so serial
// and parallel runs agree exactly.
struct TinyCodeResult {
  int m = 0;
  double best_error = 1.0;
  std::vector<int> best_encoder;  // message j -> input symbol
};

TinyCodeResult brute_force_best_code(const TransitionKernel& w, int m,
                                     Exec exec);

// Normalized smoothed divergence of the n-fold product, (n, value/n) per
// requested n.  The per-letter values converge to the relative entropy of
// the single-letter pair as n grows.
std::vector<std::pair<std::int64_t, double>> lemma2_convergence(
    const FiniteDistribution& p, const FiniteDistribution& q, double delta,
    const std::vector<std::int64_t>& n_values,
    double merge_tol = kDefaultMergeTol);

// Randomized data-processing check: random distribution pairs pushed through
// random kernels must never increase the smoothed divergence.  Returns the
// number of trials where the post-processing value exceeded the pre value by
// more than 1e-9.
struct DpiReport {
  std::int64_t trials = 0;
  std::int64_t violations = 0;
};

DpiReport dpi_property_run(std::int64_t trials, int max_alphabet,
                           std::uint64_t seed, Exec exec);

}  // namespace d0b
