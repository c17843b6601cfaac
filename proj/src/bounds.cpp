#include "d0bounds/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace d0b {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long double kLn2l = 0.69314718055994530941723212145818L;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rate_of(double log2_m, std::int64_t n) {
  return log2_m / static_cast<double>(n);
}

// Shared shell-probability recurrences for the BSC baselines, evaluated in
// long double so thousand-term cumulative sums keep full double accuracy.
struct BscShells {
  std::int64_t n;
  long double p;
  // P(d) = C(n,d) p^d (1-p)^(n-d), Q(d) = C(n,d) 2^-n, iterated in place.
  long double pd, qd;
  std::int64_t d = 0;
  BscShells(std::int64_t n_, double p_)
      : n(n_), p(p_), pd(std::pow(1.0L - static_cast<long double>(p_), n_)),
        qd(std::exp2(-static_cast<long double>(n_))) {}
  void advance() {
    long double f = static_cast<long double>(n - d) / static_cast<long double>(d + 1);
    pd *= f * (p / (1.0L - p));
    qd *= f;
    ++d;
  }
};

}  // namespace

std::string_view method_tag(Method m) {
  switch (m) {
    case Method::kConverseD0: return "converse-d0";
    case Method::kAchievabilityD0: return "achievability-d0";
    case Method::kGallager: return "gallager";
    case Method::kRcu: return "rcu";
    case Method::kDt: return "dt";
    case Method::kNpConverse: return "np-converse";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view tag) {
  for (Method m : kAllMethods)
    if (method_tag(m) == tag) return m;
  return std::nullopt;
}

BoundPoint converse_bound(const RatioSpectrum& s, std::int64_t n, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::domain_error("converse_bound: need epsilon in [0, 1)");
  double v = smooth0_divergence(s, epsilon).value;
  return {n, Method::kConverseD0, epsilon, v, rate_of(v, n), "fixed-input meta-converse"};
}

BoundPoint converse_sup_search(const DenseChannel& w, std::int64_t n, double epsilon,
                               int grid) {
  if (w.input_size() * w.output_size() > 64)
    throw std::domain_error("converse_sup_search: capped at input*output alphabet <= 64");
  if (grid < 2) throw std::domain_error("converse_sup_search: need grid >= 2");
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::domain_error("converse_sup_search: need epsilon in [0, 1)");

  const std::size_t k = w.input_size();
  auto eval = [&](const std::vector<double>& weights) {
    return smooth0_divergence(joint_spectrum(w, normalize(weights)), epsilon).value;
  };

  // Simplex grid: all compositions of `grid` into k parts.
  std::vector<double> best_w(k, 0.0);
  double best_v = -kInf;
  auto consider = [&](const std::vector<int>& c) {
    std::vector<double> weights(c.begin(), c.end());
    double v = eval(weights);
    if (v > best_v) {
      best_v = v;
      best_w = weights;
    }
  };
  // Standard odometer walk over compositions.
  {
    std::vector<int> c(k, 0);
    c[k - 1] = grid;
    while (true) {
      consider(c);
      std::size_t i = k - 1;
      while (i > 0 && c[i] == 0) --i;
      if (i == 0) break;
      ++c[i - 1];
      int rest = c[i] - 1;
      c[i] = 0;
      c[k - 1] = rest;
    }
  }

  // Normalize weights to mass form for the refinement walk.
  {
    double tot = 0;
    for (double v : best_w) tot += v;
    for (double& v : best_w) v /= tot;
  }

  // Coordinatewise pattern search: move `step` of mass between coordinates,
  // halving the step when no move improves; deterministic first-improving
  // tie handling via strict improvement.
  double step = 0.5 / grid;
  int evals = 0;
  while (step >= 1e-7 && evals < 20000) {
    bool improved = false;
    std::vector<double> cand_best;
    double cand_v = best_v;
    for (std::size_t i = 0; i < k; ++i) {
      if (best_w[i] < step - 1e-15) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        std::vector<double> cand = best_w;
        cand[i] -= step;
        cand[j] += step;
        if (cand[i] < 0) cand[i] = 0;
        double v = eval(cand);
        ++evals;
        if (v > cand_v + 1e-12) {
          cand_v = v;
          cand_best = cand;
        }
      }
    }
    if (cand_v > best_v + 1e-12) {
      best_v = cand_v;
      best_w = cand_best;
      improved = true;
    }
    if (!improved) step *= 0.5;
  }

  std::string aux = "px=[";
  for (std::size_t i = 0; i < k; ++i) {
    double tot = 0;
    for (double v : best_w) tot += v;
    aux += fmt("%.6f", best_w[i] / tot);
    if (i + 1 < k) aux += " ";
  }
  aux += "]";
  return {n, Method::kConverseD0, epsilon, best_v, rate_of(best_v, n), aux};
}

namespace {

// Underlying achievability objective x(eps') = (eps - eps') 2^{D0^{eps'}};
// both output modes are monotone transforms of it, so one optimization
// serves both. Returns log2 x to keep the huge-blocklength case in range.
double achievability_log2x(const RatioSpectrum& s, double epsilon, double ep) {
  D0Result r = smooth0_divergence(s, ep);
  if (r.value == kInf) return kInf;
  return std::log2(epsilon - ep) + r.value;
}

}  // namespace

BoundPoint achievability_bound(const RatioSpectrum& s, std::int64_t n, double epsilon,
                               AchievabilityMode mode, std::optional<double> eps_prime) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("achievability_bound: need epsilon in (0, 1)");
  double ep_star;
  if (eps_prime) {
    if (!(*eps_prime >= 0.0 && *eps_prime < epsilon))
      throw std::domain_error("achievability_bound: need eps_prime in [0, epsilon)");
    ep_star = *eps_prime;
  } else {
    // Coarse scan over a log-spaced ladder of eps - eps' (plus eps' = 0),
    // then golden-section between the best candidate's neighbors. The
    // objective is unimodal in eps': the captured Q-mass is convex piecewise
    // linear in eps', which makes (eps - eps')/Q quasi-concave.
    std::vector<double> cands;
    cands.push_back(0.0);
    for (int j = 1; j <= 80; ++j) {
      double ep = epsilon * (1.0 - std::pow(0.66, j));
      if (ep > 0.0 && ep < epsilon) cands.push_back(ep);
    }
    std::size_t best_j = 0;
    double best_f = -kInf;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      double f = achievability_log2x(s, epsilon, cands[j]);
      if (f > best_f) {
        best_f = f;
        best_j = j;
      }
    }
    double lo = best_j == 0 ? 0.0 : cands[best_j - 1];
    double hi = best_j + 1 < cands.size() ? cands[best_j + 1]
                                          : epsilon * (1.0 - 1e-12);
    auto [arg, val] = detail::golden_max(
        [&](double ep) { return achievability_log2x(s, epsilon, ep); }, lo, hi);
    ep_star = val > best_f ? arg : cands[best_j];
  }

  D0Result r = smooth0_divergence(s, ep_star);
  double log2_m;
  if (mode == AchievabilityMode::kPaper) {
    log2_m = r.value == kInf ? kInf : r.value + std::log2(epsilon - ep_star);
  } else {
    if (r.value == kInf) {
      log2_m = kInf;
    } else {
      // floor(1 + x) wants x in the linear domain when it is small enough
      // for the integer part to matter; fall back to logs when it is huge.
      double x;
      if (r.q_captured_linear > 0.0 && std::log2(epsilon - ep_star) - r.q_captured.log2() < 1000.0)
        x = (epsilon - ep_star) / r.q_captured_linear;
      else
        x = std::exp2(std::log2(epsilon - ep_star) - r.q_captured.log2());
      if (x < 9.0e15) {
        log2_m = std::log2(std::floor(1.0 + x));
      } else {
        log2_m = std::log2(epsilon - ep_star) - r.q_captured.log2();
      }
    }
  }
  return {n, Method::kAchievabilityD0, epsilon, log2_m, rate_of(log2_m, n),
          "eps_prime=" + fmt("%.9g", ep_star)};
}

double gallager_e0(double rho, double p) {
  return rho - (1.0 + rho) * std::log2(std::pow(p, 1.0 / (1.0 + rho)) +
                                       std::pow(1.0 - p, 1.0 / (1.0 + rho)));
}

BoundPoint gallager_bsc(std::int64_t n, double p, double epsilon) {
  if (n < 1) throw std::domain_error("gallager_bsc: need n >= 1");
  if (!(p > 0.0 && p < 0.5)) throw std::domain_error("gallager_bsc: need p in (0, 0.5)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("gallager_bsc: need epsilon in (0, 1)");
  const double budget = std::log2(epsilon) / static_cast<double>(n);
  auto rate = [&](double rho) { return (gallager_e0(rho, p) + budget) / rho; };
  auto [rho_star, r_star] = detail::golden_max(rate, 1e-9, 1.0);
  // Endpoint check: the maximum may sit at rho = 1.
  if (rate(1.0) > r_star) {
    rho_star = 1.0;
    r_star = rate(1.0);
  }
  double log2_m = static_cast<double>(n) * r_star;
  if (log2_m < 0.0) {
    return {n, Method::kGallager, epsilon, -kInf, -kInf, "rho=" + fmt("%.9g", rho_star)};
  }
  return {n, Method::kGallager, epsilon, log2_m, r_star, "rho=" + fmt("%.9g", rho_star)};
}

BoundPoint np_converse_bsc(const BscChannel& ch, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::domain_error("np_converse_bsc: need epsilon in [0, 1)");
  const long double target = 1.0L - static_cast<long double>(epsilon);
  BscShells sh(ch.n, ch.p);
  long double cum_p = 0.0L, beta = 0.0L;
  for (std::int64_t d = 0; d <= ch.n; ++d) {
    if (cum_p + sh.pd >= target) {
      long double gamma = (target - cum_p) / sh.pd;
      if (gamma < 0.0L) gamma = 0.0L;
      if (gamma > 1.0L) gamma = 1.0L;
      beta += gamma * sh.qd;
      cum_p = target;
      break;
    }
    cum_p += sh.pd;
    beta += sh.qd;
    if (d < ch.n) sh.advance();
  }
  double v = static_cast<double>(-std::log2(beta));
  return {ch.n, Method::kNpConverse, epsilon, v, rate_of(v, ch.n), ""};
}

namespace {

// Shared search scaffold for the two union-bound baselines.
template <class ErrFn>
BoundPoint union_bound_search(std::int64_t n, double p, double epsilon, Method method,
                              ErrFn err) {
  if (n < 1) throw std::domain_error("union bound: need n >= 1");
  if (!(p > 0.0 && p < 0.5)) throw std::domain_error("union bound: need p in (0, 0.5)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("union bound: need epsilon in (0, 1)");
  auto feasible = [&](double l2m1) { return err(l2m1) <= epsilon; };
  // M = 1 is always feasible (zero error); M = 2 is the first real test.
  if (!feasible(0.0))
    return {n, method, epsilon, 0.0, 0.0, ""};
  double lo = 0.0, hi = 1.0;
  const double cap = static_cast<double>(n) + 2.0;  // err == 1 up there, always infeasible
  while (hi < cap && feasible(hi)) {
    lo = hi;
    hi = std::min(hi * 2.0, cap);
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, lo); ++i) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  double log2_m;
  if (lo < 50.0) {
    // Integer resolution reachable: find the exact largest feasible M.
    std::uint64_t mlo = static_cast<std::uint64_t>(std::floor(std::exp2(lo))) + 1;  // feasible M
    std::uint64_t mhi = static_cast<std::uint64_t>(std::ceil(std::exp2(hi))) + 2;   // infeasible M
    while (mhi - mlo > 1) {
      std::uint64_t mid = mlo + (mhi - mlo) / 2;
      double l2m1 = std::log2(static_cast<double>(mid - 1));
      (err(l2m1) <= epsilon ? mlo : mhi) = mid;
    }
    log2_m = std::log2(static_cast<double>(mlo));
  } else {
    // 2^lo overflows nothing here, but M +- 1 is far below reporting
    // precision: log2(M) = lo + log2(1 + 2^-lo).
    log2_m = lo + std::log1p(std::exp2(-lo)) / 0.6931471805599453;
  }
  return {n, method, epsilon, log2_m, rate_of(log2_m, n), ""};
}

}  // namespace

double rcu_error(std::int64_t n, double p, double log2_m_minus_1) {
  if (log2_m_minus_1 == -kInf) return 0.0;
  BscShells sh(n, p);
  long double cum_q = 0.0L;
  long double err = 0.0L;
  for (std::int64_t t = 0; t <= n; ++t) {
    cum_q += sh.qd;
    long double lf = static_cast<long double>(log2_m_minus_1) + std::log2(cum_q);
    long double factor = lf >= 0.0L ? 1.0L : std::exp2(lf);
    err += sh.pd * factor;
    if (t < n) sh.advance();
  }
  return static_cast<double>(err);
}

double dt_error(std::int64_t n, double p, double log2_m_minus_1) {
  if (log2_m_minus_1 == -kInf) return 0.0;
  const long double lp = std::log2(static_cast<long double>(p));
  const long double lq = std::log2(1.0L - static_cast<long double>(p));
  BscShells sh(n, p);
  long double err = 0.0L;
  for (std::int64_t t = 0; t <= n; ++t) {
    long double info = static_cast<long double>(n) + static_cast<long double>(t) * lp +
                       static_cast<long double>(n - t) * lq;
    long double lf = static_cast<long double>(log2_m_minus_1) - 1.0L - info;
    long double factor = lf >= 0.0L ? 1.0L : std::exp2(lf);
    err += sh.pd * factor;
    if (t < n) sh.advance();
  }
  return static_cast<double>(err);
}

BoundPoint rcu_bsc(std::int64_t n, double p, double epsilon) {
  return union_bound_search(n, p, epsilon, Method::kRcu,
                            [=](double l2m1) { return rcu_error(n, p, l2m1); });
}

BoundPoint dt_bsc(std::int64_t n, double p, double epsilon) {
  return union_bound_search(n, p, epsilon, Method::kDt,
                            [=](double l2m1) { return dt_error(n, p, l2m1); });
}

double min_certified_error(const RatioSpectrum& s, int m) {
  if (m < 1) throw std::domain_error("min_certified_error: need m >= 1");
  long double best = 1.0L;  // empty test: everything is the miss term
  long double cum_p = 0.0L, cum_q = 0.0L;
  for (const auto& a : s.atoms()) {
    cum_p += static_cast<long double>(a.p_mass.linear());
    cum_q += static_cast<long double>(a.q_mass.linear());
    long double miss = 1.0L - cum_p;
    if (miss < 0.0L) miss = 0.0L;
    long double cand = static_cast<long double>(m - 1) * cum_q + miss;
    if (cand < best) best = cand;
  }
  if (best < 0.0L) best = 0.0L;
  return static_cast<double>(best);
}

}  // namespace d0b
