#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "d0bounds/distribution.hpp"
#include "d0bounds/logprob.hpp"
#include "oracles.hpp"

using namespace d0b;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("LogProb construction and sentinels") {
  CHECK(LogProb::zero().is_zero());
  CHECK(LogProb::from_linear(0.0).is_zero());
  CHECK(LogProb::one().log2() == 0.0);
  CHECK(LogProb::from_linear(0.25).log2() == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(LogProb::from_log2(-3.0).linear() == doctest::Approx(0.125).epsilon(1e-15));

  CHECK_THROWS_AS(LogProb::from_log2(kInf), std::domain_error);
  CHECK_THROWS_AS(LogProb::from_log2(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(LogProb::from_linear(-1e-30), std::domain_error);
  CHECK_THROWS_AS(LogProb::from_linear(std::nan("")), std::domain_error);

  // Zero dominates products; one is the identity.
  const LogProb x = LogProb::from_log2(-1.5);
  CHECK((LogProb::zero() * x).is_zero());
  CHECK((LogProb::one() * x).log2() == -1.5);
  CHECK((x * x).log2() == -3.0);

  // Ordering: zero below everything, otherwise by log value.
  CHECK(LogProb::zero() < x);
  CHECK(x < LogProb::one());
}

TEST_CASE("log_sum_exp2 small cases") {
  CHECK(log_sum_exp2({}).is_zero());

  const std::vector<LogProb> all_zero = {LogProb::zero(), LogProb::zero()};
  CHECK(log_sum_exp2(all_zero).is_zero());

  const std::vector<LogProb> halves = {LogProb::from_log2(-1.0),
                                       LogProb::from_log2(-1.0)};
  CHECK(log_sum_exp2(halves).log2() == doctest::Approx(0.0).epsilon(1e-15));

  // 1/4 + 1/8 + 1/8 = 1/2.
  const std::vector<LogProb> mix = {LogProb::from_log2(-2.0),
                                    LogProb::from_log2(-3.0),
                                    LogProb::from_log2(-3.0)};
  CHECK(log_sum_exp2(mix).log2() == doctest::Approx(-1.0).epsilon(1e-15));

  // Zero terms are ignored, huge spread keeps the max.
  const std::vector<LogProb> spread = {LogProb::zero(), LogProb::from_log2(0.0),
                                       LogProb::from_log2(-2000.0)};
  CHECK(log_sum_exp2(spread).log2() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("log_sum_exp2 stays accurate over a million terms") {
  // 2^20 equal terms of mass 2^-20 sum to exactly 1.
  const std::vector<LogProb> terms(1 << 20, LogProb::from_log2(-20.0));
  CHECK(std::fabs(log_sum_exp2(terms).log2()) <= 1e-12);
}

TEST_CASE("log2_binomial_coefficient matches the streamed-product oracle") {
  CHECK(log2_binomial_coefficient(0, 0) == 0.0);
  CHECK(log2_binomial_coefficient(10, 0) == 0.0);
  CHECK(log2_binomial_coefficient(10, 10) == 0.0);
  CHECK(log2_binomial_coefficient(10, 3) ==
        doctest::Approx(std::log2(120.0)).epsilon(1e-14));

  const std::int64_t cases[][2] = {
      {2000, 220}, {2000, 1000}, {100000, 31415}, {1000000, 500000},
      {1000000, 31415}};
  for (const auto& c : cases) {
    const double mine = log2_binomial_coefficient(c[0], c[1]);
    const double ref = static_cast<double>(oracle::log2_choose(c[0], c[1]));
    CHECK(std::fabs(mine - ref) <= 1e-12 * std::fabs(ref));
  }

  CHECK_THROWS_AS(log2_binomial_coefficient(5, 6), std::domain_error);
  CHECK_THROWS_AS(log2_binomial_coefficient(-1, 0), std::domain_error);
  CHECK_THROWS_AS(log2_binomial_coefficient(5, -1), std::domain_error);
}

TEST_CASE("log_binomial_pmf spot values and oracle agreement") {
  CHECK(log_binomial_pmf(1, 1, 0.11).log2() ==
        doctest::Approx(std::log2(0.11)).epsilon(1e-15));
  CHECK(log_binomial_pmf(2, 1, 0.5).log2() ==
        doctest::Approx(-1.0).epsilon(1e-15));

  const double mine = log_binomial_pmf(2000, 220, 0.11).log2();
  const double ref = static_cast<double>(oracle::log2_binom_pmf(2000, 220, 0.11));
  CHECK(std::fabs(mine - ref) <= 1e-10 * std::fabs(ref));

  // Degenerate crossovers collapse to point masses.
  CHECK(log_binomial_pmf(7, 0, 0.0).log2() == 0.0);
  CHECK(log_binomial_pmf(7, 3, 0.0).is_zero());
  CHECK(log_binomial_pmf(7, 7, 1.0).log2() == 0.0);
  CHECK(log_binomial_pmf(7, 6, 1.0).is_zero());

  CHECK_THROWS_AS(log_binomial_pmf(5, 6, 0.5), std::domain_error);
  CHECK_THROWS_AS(log_binomial_pmf(5, 2, -0.1), std::domain_error);
  CHECK_THROWS_AS(log_binomial_pmf(5, 2, 1.1), std::domain_error);
}

TEST_CASE("log_binomial_pmf rows sum to one") {
  for (const auto& [n, p] : {std::pair<std::int64_t, double>{2000, 0.11},
                             {5000, 0.3}}) {
    KahanSum total;
    for (std::int64_t k = 0; k <= n; ++k)
      total.add(log_binomial_pmf(n, k, p).linear());
    CHECK(std::fabs(total.value() - 1.0) <= 1e-10);
  }
}

TEST_CASE("normalize and FiniteDistribution") {
  const std::vector<double> w = {1.0, 1.0, 2.0};
  const FiniteDistribution d = normalize(w);
  REQUIRE(d.alphabet_size() == 3);
  CHECK(d.mass_linear(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d.mass_linear(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d.mass_linear(2) == doctest::Approx(0.5).epsilon(1e-15));

  // Round trip: normalized masses sum to 1 within 1e-12.
  const std::vector<double> raw = {0.3, 1e-8, 7.0, 0.0, 2.5};
  const FiniteDistribution d2 = normalize(raw);
  KahanSum total;
  for (std::size_t i = 0; i < d2.alphabet_size(); ++i)
    total.add(d2.mass_linear(i));
  CHECK(std::fabs(total.value() - 1.0) <= 1e-12);
  CHECK(d2.mass(3).is_zero());

  const FiniteDistribution u = FiniteDistribution::uniform(8);
  CHECK(u.mass_linear(5) == doctest::Approx(0.125).epsilon(1e-15));

  CHECK_THROWS_AS(normalize(std::vector<double>{0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(normalize(std::vector<double>{0.5, -0.1}), std::domain_error);
  CHECK_THROWS_AS(normalize(std::vector<double>{0.5, kInf}), std::domain_error);
  CHECK_THROWS_AS(normalize(std::vector<double>{}), std::domain_error);

  // Direct construction enforces the sum-to-one contract.
  CHECK_THROWS_AS(FiniteDistribution({LogProb::from_linear(0.5),
                                      LogProb::from_linear(0.4)}),
                  std::domain_error);
}

TEST_CASE("TransitionKernel validation and views") {
  const TransitionKernel w(2, 2, {0.9, 0.1, 0.2, 0.8});
  CHECK(w.input_size() == 2);
  CHECK(w.output_size() == 2);
  CHECK(w.lin(0, 1) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(w.log2(1, 0) == doctest::Approx(std::log2(0.2)).epsilon(1e-15));
  CHECK(w.row_lin(1).size() == 2);

  // Zero entries carry the -inf log.
  const TransitionKernel id = TransitionKernel::identity(3);
  CHECK(id.lin(1, 1) == 1.0);
  CHECK(id.log2(0, 2) == -kInf);

  CHECK_THROWS_AS(TransitionKernel(2, 2, {0.9, 0.2, 0.2, 0.8}),
                  std::domain_error);
  CHECK_THROWS_AS(TransitionKernel(2, 2, {0.9, 0.1, 0.2}), std::domain_error);
  CHECK_THROWS_AS(TransitionKernel(2, 2, {-0.1, 1.1, 0.2, 0.8}),
                  std::domain_error);
}

TEST_CASE("apply_kernel pushes a distribution through a channel") {
  const TransitionKernel w(2, 2, {0.9, 0.1, 0.2, 0.8});
  const FiniteDistribution in = normalize(std::vector<double>{0.5, 0.5});
  const FiniteDistribution out = apply_kernel(w, in);
  REQUIRE(out.alphabet_size() == 2);
  CHECK(out.mass_linear(0) == doctest::Approx(0.55).epsilon(1e-14));
  CHECK(out.mass_linear(1) == doctest::Approx(0.45).epsilon(1e-14));

  CHECK_THROWS_AS(apply_kernel(w, FiniteDistribution::uniform(3)),
                  std::domain_error);
}
