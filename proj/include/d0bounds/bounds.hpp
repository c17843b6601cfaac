#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "d0bounds/channel.hpp"
#include "d0bounds/divergence.hpp"

namespace d0b {

enum class Method {
  kConverseD0,
  kAchievabilityD0,
  kGallager,
  kRcu,
  kDt,
  kNpConverse,
};

/// Canonical emission order for sweeps.
inline constexpr Method kAllMethods[] = {
    Method::kConverseD0, Method::kAchievabilityD0, Method::kGallager,
    Method::kRcu,        Method::kDt,              Method::kNpConverse,
};

std::string_view method_tag(Method m);
std::optional<Method> parse_method(std::string_view tag);

enum class AchievabilityMode { kPaper, kExact };

/// One point of a bound curve. log2_m is an extended real: -inf is the
/// no-code sentinel; the raw codebook-size objective (paper-mode
/// achievability) may also go negative.
struct BoundPoint {
  std::int64_t n;
  Method method;
  double epsilon;
  double log2_m;
  double rate;  // log2_m / n
  std::string aux;
};

/// Converse from the smoothed divergence at the error level itself:
/// log2 m <= D0^eps of the given input/output-pair spectrum.
BoundPoint converse_bound(const RatioSpectrum& s, std::int64_t n, double epsilon);

/// Maximizes the converse over input distributions: simplex grid search at
/// the given resolution followed by coordinatewise local refinement. Returns
/// a certified lower estimate of the sup together with the achieving input in
/// aux. Capped at input_size * output_size <= 64.
BoundPoint converse_sup_search(const DenseChannel& w, std::int64_t n, double epsilon,
                               int grid);

/// Random-coding achievability via the smoothed divergence at a smaller
/// error level eps' < eps:
///   paper mode: log2 m = D0^{eps'} - log2(1/(eps - eps')),
///   exact mode: log2 m = log2 floor(1 + (eps - eps') 2^{D0^{eps'}}).
/// eps' is maximized by a coarse log-spaced scan plus golden-section
/// refinement unless pinned. Exact mode always dominates paper mode.
BoundPoint achievability_bound(const RatioSpectrum& s, std::int64_t n, double epsilon,
                               AchievabilityMode mode,
                               std::optional<double> eps_prime = std::nullopt);

/// Gallager random-coding exponent for the BSC with uniform input, in bits.
double gallager_e0(double rho, double p);

/// Largest rate with min_rho exp2(-n (E0(rho) - rho R)) <= eps:
/// R(rho) = E0(rho)/rho + log2(eps)/(n rho), maximized over rho in (0, 1].
BoundPoint gallager_bsc(std::int64_t n, double p, double epsilon);

/// Hypothesis-testing converse for the n-use BSC with uniform input,
/// written directly against the optimal type-II error: fill Hamming shells
/// in ascending distance until P-mass 1 - eps, fractional weight on the
/// boundary shell, and report -log2 of the Q-mass captured. Independent of
/// the spectrum/greedy code path on purpose: it cross-checks converse_bound.
BoundPoint np_converse_bsc(const BscChannel& ch, double epsilon);

/// Random-coding union bound error for codebook size M on the n-use BSC:
/// sum_t P(t) min{1, (M-1) 2^-n sum_{s<=t} C(n,s)}. log2_m_minus_1 = -inf
/// means M = 1 (error 0).
double rcu_error(std::int64_t n, double p, double log2_m_minus_1);

/// Dependence-testing style error for codebook size M:
/// sum_t P(t) min{1, (M-1)/2 * 2^{-i_t}}, i_t = n + t log2 p + (n-t) log2(1-p).
double dt_error(std::int64_t n, double p, double log2_m_minus_1);

/// Largest codebook sizes with rcu_error / dt_error <= eps. Binary search on
/// integer M up to 2^50; beyond that the search runs in the log2(M-1) domain
/// to 1e-10 bits (integer resolution is far below the reporting precision
/// there).
BoundPoint rcu_bsc(std::int64_t n, double p, double epsilon);
BoundPoint dt_bsc(std::int64_t n, double p, double epsilon);

/// Smallest average error the random-coding argument certifies for a
/// codebook of size m on this spectrum: min over threshold breakpoints of
/// (m-1) Qcum + (1 - Pcum). The error objective is piecewise linear in
/// eps', so the breakpoint minimum is exact.
double min_certified_error(const RatioSpectrum& s, int m);

namespace detail {

/// Golden-section maximizer for a unimodal objective on [a, b]; stops when
/// the objective stops changing by more than f_tol or after max_iter
/// shrink steps. Returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double f_tol = 1e-9,
                                     int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter; ++i) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    }
    if (std::fabs(fc - fd) < f_tol) break;
  }
  return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace detail

}  // namespace d0b
