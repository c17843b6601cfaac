#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace d0b {

/// Probability magnitude stored as a base-2 logarithm.
///
/// Zero mass is the -inf sentinel, which compares smaller than every finite
/// value. NaN never enters: the factories reject it, and the only arithmetic
/// offered (log-domain product) cannot produce it because +inf is rejected
/// as well.
class LogProb {
 public:
  /// Zero mass.
  constexpr LogProb() = default;

  static constexpr LogProb zero() { return LogProb(); }
  static LogProb one() { return from_log2(0.0); }

  static LogProb from_log2(double v) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw std::domain_error("LogProb: log2 value must be finite or -inf");
    LogProb p;
    p.v_ = v;
    return p;
  }

  static LogProb from_linear(double x) {
    if (std::isnan(x) || x < 0.0)
      throw std::domain_error("LogProb: linear mass must be a nonnegative real");
    LogProb p;
    p.v_ = x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log2(x);
    return p;
  }

  double log2() const { return v_; }
  double linear() const { return std::exp2(v_); }
  bool is_zero() const { return v_ == -std::numeric_limits<double>::infinity(); }

  friend bool operator==(LogProb a, LogProb b) { return a.v_ == b.v_; }
  friend auto operator<=>(LogProb a, LogProb b) { return a.v_ <=> b.v_; }

  /// Log-domain product of masses; the zero sentinel dominates.
  friend LogProb operator*(LogProb a, LogProb b) {
    LogProb r;
    r.v_ = a.v_ + b.v_;  // -inf + finite = -inf, -inf + -inf = -inf
    return r;
  }

 private:
  double v_ = -std::numeric_limits<double>::infinity();
};

/// Compensated (Kahan) sum of linear-domain terms.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

/// Sum of log-domain masses via the max-shift trick, Kahan-compensated so
/// that million-term sums stay accurate to ~1 ulp. Empty input and all-zero
/// input both return the zero sentinel.
inline LogProb log_sum_exp2(std::span<const LogProb> terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (LogProb t : terms)
    if (t.log2() > m) m = t.log2();
  if (m == -std::numeric_limits<double>::infinity()) return LogProb::zero();
  KahanSum s;
  for (LogProb t : terms) s.add(std::exp2(t.log2() - m));
  return LogProb::from_log2(m + std::log2(s.value()));
}

namespace detail {

/// log2 of the binomial coefficient, evaluated in extended precision so the
/// lgamma cancellation at n ~ 10^6 still leaves >= 12 significant digits.
inline long double log2_choose_ld(std::int64_t n, std::int64_t k) {
  constexpr long double kLn2 = 0.69314718055994530941723212145818L;
  if (k == 0 || k == n) return 0.0L;
  return (std::lgamma(static_cast<long double>(n) + 1.0L) -
          std::lgamma(static_cast<long double>(k) + 1.0L) -
          std::lgamma(static_cast<long double>(n - k) + 1.0L)) /
         kLn2;
}

}  // namespace detail

/// log2 C(n, k). Throws std::domain_error outside 0 <= k <= n.
inline double log2_binomial_coefficient(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n)
    throw std::domain_error("log2_binomial_coefficient: need 0 <= k <= n");
  return static_cast<double>(detail::log2_choose_ld(n, k));
}

/// Binomial point mass C(n,k) p^k (1-p)^(n-k) in the log domain.
///
/// p = 0 and p = 1 collapse to point masses at k = 0 / k = n; everything else
/// is evaluated in long double before narrowing, accurate to >= 12
/// significant digits for n up to 10^6.
inline LogProb log_binomial_pmf(std::int64_t n, std::int64_t k, double p) {
  if (n < 0 || k < 0 || k > n)
    throw std::domain_error("log_binomial_pmf: need 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("log_binomial_pmf: need p in [0, 1]");
  if (p == 0.0) return k == 0 ? LogProb::one() : LogProb::zero();
  if (p == 1.0) return k == n ? LogProb::one() : LogProb::zero();
  long double v = detail::log2_choose_ld(n, k) +
                  static_cast<long double>(k) * std::log2(static_cast<long double>(p)) +
                  static_cast<long double>(n - k) * std::log2(1.0L - static_cast<long double>(p));
  return LogProb::from_log2(static_cast<double>(v));
}

}  // namespace d0b
