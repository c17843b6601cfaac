#pragma once

// Independent reference implementations used only by the tests.  These are
// deliberately written with different algorithms than the library (streamed
// products instead of lgamma, bisection instead of series) so agreement is
// evidence rather than tautology.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace oracle {

// log2 C(n, k) as a streamed product: sum_{i=0}^{k-1} log2((n-i)/(i+1)),
// compensated in long double.  No gamma function anywhere.
inline long double log2_choose(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("log2_choose: bad args");
  if (k > n - k) k = n - k;
  long double s = 0.0L, c = 0.0L;
  for (std::int64_t i = 0; i < k; ++i) {
    const long double term = std::log2(static_cast<long double>(n - i)) -
                             std::log2(static_cast<long double>(i + 1));
    const long double y = term - c;
    const long double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

// log2 of C(n,k) p^k (1-p)^(n-k), long double throughout.
inline long double log2_binom_pmf(std::int64_t n, std::int64_t k, double p) {
  const long double lp = static_cast<long double>(p);
  return log2_choose(n, k) + static_cast<long double>(k) * std::log2(lp) +
         static_cast<long double>(n - k) * std::log2(1.0L - lp);
}

// Upper quantile of the standard normal: the x with P[N(0,1) > x] = eps,
// found by bisecting Q(x) = erfc(x / sqrt(2)) / 2 on [0, 40].
inline double normal_upper_quantile(double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::domain_error("normal_upper_quantile: need eps in (0, 0.5)");
  const auto q = [](long double x) -> long double {
    return 0.5L * std::erfc(x / std::sqrt(2.0L));
  };
  long double lo = 0.0L, hi = 40.0L;
  while (hi - lo > 1e-13L) {
    const long double mid = 0.5L * (lo + hi);
    if (q(mid) > static_cast<long double>(eps))
      lo = mid;
    else
      hi = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace oracle
