#include "d0bounds/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace d0b {

FiniteDistribution::FiniteDistribution(std::vector<LogProb> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty())
    throw std::domain_error("FiniteDistribution: empty alphabet");
  double total = log_sum_exp2(masses_).log2();
  if (!(std::fabs(total) <= 1e-12))
    throw std::domain_error("FiniteDistribution: masses sum to 2^" + std::to_string(total) +
                            ", expected 1 within 1e-12");
}

FiniteDistribution FiniteDistribution::uniform(std::size_t k) {
  if (k == 0) throw std::domain_error("FiniteDistribution::uniform: empty alphabet");
  std::vector<LogProb> m(k, LogProb::from_log2(-std::log2(static_cast<double>(k))));
  return FiniteDistribution(std::move(m));
}

FiniteDistribution normalize(std::span<const double> weights) {
  if (weights.empty()) throw std::domain_error("normalize: empty weight vector");
  KahanSum total;
  for (double w : weights) {
    if (std::isnan(w) || !std::isfinite(w) || w < 0.0)
      throw std::domain_error("normalize: weights must be finite and nonnegative");
    total.add(w);
  }
  if (total.value() <= 0.0) throw std::domain_error("normalize: all weights are zero");
  double log_total = std::log2(total.value());
  std::vector<LogProb> m;
  m.reserve(weights.size());
  for (double w : weights)
    m.push_back(w == 0.0 ? LogProb::zero() : LogProb::from_log2(std::log2(w) - log_total));
  return FiniteDistribution(std::move(m));
}

TransitionKernel::TransitionKernel(std::size_t rows, std::size_t cols,
                                   std::vector<double> row_major, double row_tol)
    : rows_(rows), cols_(cols), lin_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0)
    throw std::domain_error("TransitionKernel: empty dimension");
  if (lin_.size() != rows_ * cols_)
    throw std::domain_error("TransitionKernel: entry count does not match rows*cols");
  for (std::size_t i = 0; i < rows_; ++i) {
    KahanSum s;
    for (std::size_t j = 0; j < cols_; ++j) {
      double w = lin_[i * cols_ + j];
      if (std::isnan(w) || !std::isfinite(w) || w < 0.0)
        throw std::domain_error("TransitionKernel: entries must be finite and nonnegative");
      s.add(w);
    }
    if (!(std::fabs(s.value() - 1.0) <= row_tol))
      throw std::domain_error("TransitionKernel: row " + std::to_string(i) + " sums to " +
                              std::to_string(s.value()) + ", off by more than tolerance");
  }
  log_.resize(lin_.size());
  for (std::size_t i = 0; i < lin_.size(); ++i)
    log_[i] = lin_[i] == 0.0 ? -std::numeric_limits<double>::infinity() : std::log2(lin_[i]);
}

TransitionKernel TransitionKernel::identity(std::size_t k) {
  std::vector<double> e(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) e[i * k + i] = 1.0;
  return TransitionKernel(k, k, std::move(e));
}

FiniteDistribution apply_kernel(const TransitionKernel& w, const FiniteDistribution& d) {
  if (d.alphabet_size() != w.input_size())
    throw std::domain_error("apply_kernel: distribution alphabet does not match kernel rows");
  std::vector<double> din(d.alphabet_size());
  for (std::size_t i = 0; i < din.size(); ++i) din[i] = d.mass_linear(i);
  std::vector<LogProb> out;
  out.reserve(w.output_size());
  for (std::size_t j = 0; j < w.output_size(); ++j) {
    KahanSum s;
    for (std::size_t i = 0; i < w.input_size(); ++i) {
      if (din[i] == 0.0) continue;
      s.add(din[i] * w.lin(i, j));
    }
    out.push_back(LogProb::from_linear(s.value()));
  }
  return FiniteDistribution(std::move(out));
}

}  // namespace d0b
