#include "d0bounds/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <limits>
#include <stdexcept>
#include <string>

#include "d0bounds/channel.hpp"
#include "d0bounds/rng.hpp"

namespace d0b {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Walk a linear-mass CDF; the fp leftover at the top lands on the last
// positive atom.
int draw_index(std::span<const double> mass, double u) {
  double cum = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    cum += mass[i];
    if (u < cum) return static_cast<int>(i);
  }
  return last_positive;
}

enum Decision : unsigned char { kReject = 0, kBoundary = 1, kAccept = 2 };

}  // namespace

SimReport simulate_phi_decoder(const TransitionKernel& w,
                               const FiniteDistribution& input,
                               const ThresholdTest& test, int m,
                               std::int64_t trials, std::uint64_t seed,
                               Exec exec) {
  if (m < 2) throw std::invalid_argument("simulate_phi_decoder: m must be >= 2");
  if (trials < 1)
    throw std::invalid_argument("simulate_phi_decoder: trials must be >= 1");
  const int in = static_cast<int>(w.input_size());
  const int out = static_cast<int>(w.output_size());
  if (input.alphabet_size() != w.input_size())
    throw std::invalid_argument(
        "simulate_phi_decoder: input distribution does not match channel");

  // The union-bound right-hand side comes from the same test evaluated on
  // the exact joint spectrum.
  const RatioSpectrum joint = joint_spectrum(w, input);
  const TestCapture cap = evaluate_test(joint, test);
  const double rhs =
      (1.0 - cap.p_mass) + (static_cast<double>(m) - 1.0) * cap.q_mass_linear;

  // Classify every (input, output) pair against the test boundary once.
  // Per-pair scores can differ from the merged-atom boundary by rounding,
  // hence the matching tolerance.
  const FiniteDistribution p_out = apply_kernel(w, input);
  const double b = test.boundary_log_ratio;
  constexpr double kBoundaryTol = 1e-9;
  std::vector<unsigned char> decision(
      static_cast<std::size_t>(in) * static_cast<std::size_t>(out), kReject);
  for (int x = 0; x < in; ++x) {
    for (int y = 0; y < out; ++y) {
      const double wl = w.log2(x, y);
      const double pyl = p_out.mass(static_cast<std::size_t>(y)).log2();
      if (std::isinf(wl) || std::isinf(pyl)) continue;  // unreachable pair
      const double score = wl - pyl;
      auto& d = decision[static_cast<std::size_t>(x) * out + y];
      if (score > b + kBoundaryTol) {
        d = kAccept;
      } else if (std::fabs(score - b) <= kBoundaryTol) {
        d = kBoundary;
      }
    }
  }

  std::vector<double> in_mass(static_cast<std::size_t>(in));
  for (int x = 0; x < in; ++x)
    in_mass[static_cast<std::size_t>(x)] =
        input.mass_linear(static_cast<std::size_t>(x));

  const double gamma = test.gamma;
  auto run_trial = [&](std::int64_t t) -> int {
    SplitMix64 rng(trial_stream_seed(seed, static_cast<std::uint64_t>(t)));
    const int msg = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
    std::vector<int> cw(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
      cw[static_cast<std::size_t>(j)] = draw_index(in_mass, rng.next_unit());
    const int y = draw_index(w.row_lin(static_cast<std::size_t>(
                                 cw[static_cast<std::size_t>(msg)])),
                             rng.next_unit());
    bool ok = true;
    for (int j = 0; j < m; ++j) {
      const double coin = rng.next_unit();  // consumed even off-boundary
      const unsigned char d =
          decision[static_cast<std::size_t>(cw[static_cast<std::size_t>(j)]) *
                       out +
                   y];
      const bool accept = d == kAccept || (d == kBoundary && coin < gamma);
      if (j == msg ? !accept : accept) ok = false;
    }
    return ok ? 0 : 1;
  };

  std::int64_t errors = 0;
  if (exec == Exec::kParallel) {
#pragma omp parallel for reduction(+ : errors) schedule(static)
    for (std::int64_t t = 0; t < trials; ++t) errors += run_trial(t);
  } else {
    for (std::int64_t t = 0; t < trials; ++t) errors += run_trial(t);
  }

  SimReport rep;
  rep.trials = trials;
  rep.errors_observed = errors;
  rep.error_estimate =
      static_cast<double>(errors) / static_cast<double>(trials);
  rep.std_err = std::sqrt(std::max(
      0.0, rep.error_estimate * (1.0 - rep.error_estimate) /
               static_cast<double>(trials)));
  rep.bound_rhs = rhs;
  rep.seed = seed;
  return rep;
}

double lp_oracle_smooth0(const RatioSpectrum& s, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::domain_error("lp_oracle_smooth0: delta must be in [0, 1]");
  const auto& atoms = s.atoms();
  const std::size_t k = atoms.size();
  if (k > 20)
    throw std::invalid_argument(
        "lp_oracle_smooth0: vertex enumeration capped at 20 atoms, got " +
        std::to_string(k));
  const long double target = 1.0L - static_cast<long double>(delta);
  if (target <= 0.0L) return kInf;

  std::vector<long double> p(k), q(k);
  for (std::size_t i = 0; i < k; ++i) {
    p[i] = static_cast<long double>(atoms[i].p_mass.linear());
    q[i] = static_cast<long double>(atoms[i].q_mass.linear());
  }

  long double best = -1.0L;  // sentinel: no feasible vertex seen yet
  const std::uint32_t masks = k == 0 ? 1u : (1u << k);
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    long double pl = 0.0L, ql = 0.0L;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        pl += p[i];
        ql += q[i];
      }
    }
    if (pl >= target - 1e-15L) {
      if (best < 0.0L || ql < best) best = ql;
      continue;
    }
    for (std::size_t bdy = 0; bdy < k; ++bdy) {
      if ((mask & (1u << bdy)) || p[bdy] <= 0.0L) continue;
      const long double g = (target - pl) / p[bdy];
      if (g > 1.0L + 1e-12L) continue;
      const long double cand = ql + std::min(g, 1.0L) * q[bdy];
      if (best < 0.0L || cand < best) best = cand;
    }
  }
  if (best <= 0.0L) return kInf;  // infeasible or zero-mass optimum
  return static_cast<double>(-std::log2(best));
}

TinyCodeResult brute_force_best_code(const TransitionKernel& w, int m,
                                     Exec exec) {
  if (m < 1) throw std::invalid_argument("brute_force_best_code: m must be >= 1");
  const int in = static_cast<int>(w.input_size());
  const int out = static_cast<int>(w.output_size());
  double total_d = 1.0;
  for (int j = 0; j < m; ++j) {
    total_d *= static_cast<double>(in);
    if (total_d > 1e6)
      throw std::invalid_argument(
          "brute_force_best_code: encoder space exceeds 1e6");
  }
  const std::int64_t total = static_cast<std::int64_t>(total_d);

  // Encoders are identified by base-|in| digits with message 0 in the most
  // significant place, so numeric order on the index is lexicographic order
  // on the encoder vector and ties resolve to the lexicographically smallest
  // one.  The exact per-encoder arithmetic is shared by both execution modes,
  // and the final (error, index) min is order-independent, so the modes agree
  // bitwise.
  std::vector<std::int64_t> stride(static_cast<std::size_t>(m));
  stride[static_cast<std::size_t>(m - 1)] = 1;
  for (int j = m - 2; j >= 0; --j)
    stride[static_cast<std::size_t>(j)] =
        stride[static_cast<std::size_t>(j + 1)] * in;

  auto encoder_error = [&](std::int64_t idx) -> double {
    KahanSum success;
    for (int y = 0; y < out; ++y) {
      double mx = 0.0;
      for (int j = 0; j < m; ++j) {
        const int x =
            static_cast<int>((idx / stride[static_cast<std::size_t>(j)]) % in);
        mx = std::max(mx, w.lin(static_cast<std::size_t>(x),
                                static_cast<std::size_t>(y)));
      }
      success.add(mx);
    }
    const double err = 1.0 - success.value() / static_cast<double>(m);
    return std::clamp(err, 0.0, 1.0);
  };

  double best_err = kInf;
  std::int64_t best_idx = 0;
  auto merge = [&](double err, std::int64_t idx) {
    if (err < best_err || (err == best_err && idx < best_idx)) {
      best_err = err;
      best_idx = idx;
    }
  };

  if (exec == Exec::kParallel) {
#pragma omp parallel
    {
      double loc_err = kInf;
      std::int64_t loc_idx = 0;
#pragma omp for schedule(static) nowait
      for (std::int64_t idx = 0; idx < total; ++idx) {
        const double err = encoder_error(idx);
        if (err < loc_err || (err == loc_err && idx < loc_idx)) {
          loc_err = err;
          loc_idx = idx;
        }
      }
#pragma omp critical
      merge(loc_err, loc_idx);
    }
  } else {
    for (std::int64_t idx = 0; idx < total; ++idx) merge(encoder_error(idx), idx);
  }

  TinyCodeResult res;
  res.m = m;
  res.best_error = best_err;
  res.best_encoder.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    res.best_encoder[static_cast<std::size_t>(j)] = static_cast<int>(
        (best_idx / stride[static_cast<std::size_t>(j)]) % in);
  return res;
}

std::vector<std::pair<std::int64_t, double>> lemma2_convergence(
    const FiniteDistribution& p, const FiniteDistribution& q, double delta,
    const std::vector<std::int64_t>& n_values, double merge_tol) {
  const RatioSpectrum base = RatioSpectrum::build(p, q);
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(n_values.size());
  for (std::int64_t n : n_values) {
    if (n < 1)
      throw std::invalid_argument("lemma2_convergence: n values must be >= 1");
    const RatioSpectrum sn = convolve_power(base, n, merge_tol);
    const double v = smooth0_divergence(sn, delta).value;
    out.emplace_back(n, v / static_cast<double>(n));
  }
  return out;
}

namespace {

int dpi_trial(std::uint64_t seed, std::int64_t t, int max_alphabet) {
  SplitMix64 rng(trial_stream_seed(seed, static_cast<std::uint64_t>(t)));
  const int kin =
      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_alphabet)));
  const int kout =
      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_alphabet)));

  const std::vector<double> pw = random_weights(rng, kin);
  const std::vector<double> qw = random_weights(rng, kin);
  std::vector<double> rows(static_cast<std::size_t>(kin) *
                           static_cast<std::size_t>(kout));
  for (int i = 0; i < kin; ++i) {
    std::vector<double> row = random_weights(rng, kout);
    double sum = 0.0;
    for (double v : row) sum += v;
    for (int j = 0; j < kout; ++j)
      rows[static_cast<std::size_t>(i) * kout + j] =
          row[static_cast<std::size_t>(j)] / sum;
  }
  const double delta = 0.9 * rng.next_unit();

  const FiniteDistribution p = normalize(pw);
  const FiniteDistribution q = normalize(qw);
  const TransitionKernel w(static_cast<std::size_t>(kin),
                           static_cast<std::size_t>(kout), rows, 1e-9);

  const double pre = smooth0_divergence(RatioSpectrum::build(p, q), delta).value;
  const double post =
      smooth0_divergence(
          RatioSpectrum::build(apply_kernel(w, p), apply_kernel(w, q)), delta)
          .value;
  // Inf > inf is false, so an infinite pre-processing value can never be
  // flagged; a finite pre with infinite post is a genuine violation.
  return post > pre + 1e-9 ? 1 : 0;
}

}  // namespace

DpiReport dpi_property_run(std::int64_t trials, int max_alphabet,
                           std::uint64_t seed, Exec exec) {
  if (trials < 1)
    throw std::invalid_argument("dpi_property_run: trials must be >= 1");
  if (max_alphabet < 1 || max_alphabet > 32)
    throw std::invalid_argument(
        "dpi_property_run: max_alphabet must be in [1, 32]");
  std::int64_t violations = 0;
  if (exec == Exec::kParallel) {
#pragma omp parallel for reduction(+ : violations) schedule(static)
    for (std::int64_t t = 0; t < trials; ++t)
      violations += dpi_trial(seed, t, max_alphabet);
  } else {
    for (std::int64_t t = 0; t < trials; ++t)
      violations += dpi_trial(seed, t, max_alphabet);
  }
  return DpiReport{trials, violations};
}

}  // namespace d0b
