#include "d0bounds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "d0bounds/bounds.hpp"
#include "d0bounds/channel.hpp"
#include "d0bounds/divergence.hpp"
#include "d0bounds/rng.hpp"
#include "d0bounds/sim.hpp"

namespace d0b {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Random spectrum over alphabets 2..20 (the vertex oracle's cap), covering
// boundary and infinite-ratio cases via the occasional zero weights.
RatioSpectrum random_spectrum(SplitMix64& rng) {
  const int k = 2 + static_cast<int>(rng.next_below(19));
  const FiniteDistribution p = normalize(random_weights(rng, k));
  const FiniteDistribution q = normalize(random_weights(rng, k));
  return RatioSpectrum::build(p, q);
}

bool values_agree(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

}  // namespace

PropertyReport greedy_vs_lp_property(std::int64_t trials, std::uint64_t seed) {
  PropertyReport rep;
  rep.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(trial_stream_seed(seed, static_cast<std::uint64_t>(t)));
    const RatioSpectrum s = random_spectrum(rng);
    const double delta = rng.next_unit();
    const double greedy = smooth0_divergence(s, delta).value;
    const double lp = lp_oracle_smooth0(s, delta);
    if (std::isfinite(greedy) && std::isfinite(lp))
      rep.max_delta = std::max(rep.max_delta, std::fabs(greedy - lp));
    if (!values_agree(greedy, lp, 1e-12)) {
      ++rep.failures;
      if (rep.first_failure.empty())
        rep.first_failure = "trial=" + std::to_string(t) +
                            " delta=" + fmt(delta) + " greedy=" + fmt(greedy) +
                            " lp=" + fmt(lp);
    }
  }
  return rep;
}

PropertyReport smoothing_shape_property(std::int64_t trials,
                                        std::uint64_t seed) {
  PropertyReport rep;
  rep.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(trial_stream_seed(seed, static_cast<std::uint64_t>(t)));
    const int k = 2 + static_cast<int>(rng.next_below(9));
    const FiniteDistribution p = normalize(random_weights(rng, k));
    const FiniteDistribution q = normalize(random_weights(rng, k));
    const RatioSpectrum s = RatioSpectrum::build(p, q);

    double d1 = rng.next_unit();
    double d2 = rng.next_unit();
    if (d1 > d2) std::swap(d1, d2);
    const double v1 = smooth0_divergence(s, d1).value;
    const double v2 = smooth0_divergence(s, d2).value;
    const bool mono_ok = !(v1 > v2 + 1e-12);

    const double v0 = smooth0_divergence(s, 0.0).value;
    const double r0 = renyi0_divergence(s);
    const bool zero_ok = v0 == r0;

    const double d3 = rng.next_unit();
    const double self = smooth0_divergence(RatioSpectrum::build(p, p), d3).value;
    const bool self_ok = std::fabs(self - (-std::log2(1.0 - d3))) <= 1e-9;

    if (!(mono_ok && zero_ok && self_ok)) {
      ++rep.failures;
      if (rep.first_failure.empty())
        rep.first_failure =
            "trial=" + std::to_string(t) + (mono_ok ? "" : " monotonicity") +
            (zero_ok ? "" : " zero-budget") + (self_ok ? "" : " self-divergence");
    }
  }
  return rep;
}

namespace {

int check(std::ostream& os, const std::string& line, bool pass) {
  os << line << " : " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

int suite_dpi(const VerifyOptions& opt, std::ostream& os) {
  const DpiReport rep = dpi_property_run(10000, 6, opt.seed, opt.exec);
  return check(os,
               "[dpi] trials=" + std::to_string(rep.trials) +
                   " max_alphabet=6 violations=" + std::to_string(rep.violations),
               rep.violations == 0);
}

int suite_greedy_vs_lp(const VerifyOptions& opt, std::ostream& os) {
  int failures = 0;
  const PropertyReport lp = greedy_vs_lp_property(1000, opt.seed);
  failures += check(os,
                    "[greedy-vs-lp] trials=" + std::to_string(lp.trials) +
                        " failures=" + std::to_string(lp.failures) +
                        " max_delta=" + fmt(lp.max_delta) +
                        (lp.failures ? " first{" + lp.first_failure + "}" : ""),
                    lp.failures == 0);
  const PropertyReport shape =
      smoothing_shape_property(1000, trial_stream_seed(opt.seed, 1));
  failures += check(os,
                    "[shape] trials=" + std::to_string(shape.trials) +
                        " failures=" + std::to_string(shape.failures) +
                        (shape.failures ? " first{" + shape.first_failure + "}" : ""),
                    shape.failures == 0);
  return failures;
}

int suite_decoder_sim(const VerifyOptions& opt, std::ostream& os) {
  int failures = 0;
  int cell = 0;
  for (const std::int64_t n : {2, 6, 10}) {
    const DenseChannel dense = bsc_product_dense(n, 0.11);
    const FiniteDistribution input = FiniteDistribution::uniform(dense.input_size());
    const D0Result d0 = smooth0_divergence(joint_spectrum(dense, input), 0.2);
    for (const int m : {2, 4, 8}) {
      const SimReport rep = simulate_phi_decoder(
          dense, input, d0.test, m, opt.trials,
          trial_stream_seed(opt.seed, 7000 + static_cast<std::uint64_t>(cell++)),
          opt.exec);
      const bool pass =
          rep.error_estimate <= rep.bound_rhs + 3.0 * rep.std_err;
      failures += check(
          os,
          "[decoder-sim] n=" + std::to_string(n) + " m=" + std::to_string(m) +
              " trials=" + std::to_string(rep.trials) + " estimate=" +
              fmt(rep.error_estimate) + " rhs=" + fmt(rep.bound_rhs) +
              " stderr=" + fmt(rep.std_err),
          pass);
    }
  }
  return failures;
}

int suite_tiny_codes(const VerifyOptions& opt, std::ostream& os) {
  struct Preset {
    const char* name;
    std::vector<double> rows;
  };
  const Preset presets[] = {
      {"noiseless", {1.0, 0.0, 0.0, 1.0}},
      {"bsc(0.11)", {0.89, 0.11, 0.11, 0.89}},
      {"bsc(0.3)", {0.7, 0.3, 0.3, 0.7}},
      {"z(0.4)", {1.0, 0.0, 0.4, 0.6}},
      {"asym", {0.75, 0.25, 0.1, 0.9}},
  };
  int failures = 0;
  for (const auto& preset : presets) {
    const TransitionKernel w(2, 2, preset.rows);
    for (const int m : {2, 3}) {
      const TinyCodeResult bf = brute_force_best_code(w, m, opt.exec);
      const double eps =
          std::min(bf.best_error + 1e-9, 1.0 - 1e-12);
      const double conv = converse_sup_search(w, 1, eps, 40).log2_m;
      double cert = 1.0;
      for (int a = 0; a <= 100; ++a) {
        const FiniteDistribution input =
            normalize(std::vector<double>{a / 100.0, 1.0 - a / 100.0});
        cert = std::min(cert,
                        min_certified_error(joint_spectrum(w, input), m));
      }
      const bool pass = std::log2(static_cast<double>(m)) <= conv + 1e-3 &&
                        bf.best_error <= cert + 1e-9;
      failures += check(os,
                        std::string("[tiny-codes] channel=") + preset.name +
                            " m=" + std::to_string(m) + " best_error=" +
                            fmt(bf.best_error) + " converse=" + fmt(conv) +
                            " certified=" + fmt(cert),
                        pass);
    }
  }
  return failures;
}

int suite_lemma2(const VerifyOptions&, std::ostream& os) {
  const FiniteDistribution p = normalize(std::vector<double>{0.8, 0.2});
  const FiniteDistribution q = normalize(std::vector<double>{0.5, 0.5});
  const double kl = kl_divergence(p, q);
  const auto points =
      lemma2_convergence(p, q, 0.1, {1, 2, 4, 8, 16, 32, 64, 128});
  for (const auto& [n, per_letter] : points)
    os << "[lemma2] n=" << n << " per_letter=" << fmt(per_letter)
       << " kl=" << fmt(kl) << '\n';
  const double dev_first = std::fabs(points.front().second - kl);
  const double dev_last = std::fabs(points.back().second - kl);
  int failures = 0;
  failures += check(os,
                    "[lemma2] contraction dev(n=128)=" + fmt(dev_last) +
                        " < dev(n=1)=" + fmt(dev_first),
                    dev_last < dev_first);
  failures += check(os, "[lemma2] dev(n=128)=" + fmt(dev_last) + " <= 0.15",
                    dev_last <= 0.15);
  return failures;
}

}  // namespace

int run_verify(const std::string& suite, const VerifyOptions& opt,
               std::ostream& os) {
  int failures = 0;
  bool known = false;
  const bool all = suite == "all";
  if (all || suite == "dpi") {
    failures += suite_dpi(opt, os);
    known = true;
  }
  if (all || suite == "greedy-vs-lp") {
    failures += suite_greedy_vs_lp(opt, os);
    known = true;
  }
  if (all || suite == "decoder-sim") {
    failures += suite_decoder_sim(opt, os);
    known = true;
  }
  if (all || suite == "tiny-codes") {
    failures += suite_tiny_codes(opt, os);
    known = true;
  }
  if (all || suite == "lemma2") {
    failures += suite_lemma2(opt, os);
    known = true;
  }
  if (!known)
    throw std::invalid_argument(
        "unknown suite '" + suite +
        "' (expected dpi, greedy-vs-lp, decoder-sim, tiny-codes, lemma2, or all)");
  if (failures == 0)
    os << "verify: all checks passed\n";
  else
    os << "verify: " << failures << " check(s) failed\n";
  return failures;
}

}  // namespace d0b
