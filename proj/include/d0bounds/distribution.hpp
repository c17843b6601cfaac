#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "d0bounds/logprob.hpp"

namespace d0b {

/// Probability distribution on a finite alphabet {0, ..., k-1}, masses kept
/// in the log domain. Construction checks that the masses sum to 1 within
/// 1e-12 (log-domain check on |log2 of the total|).
class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<LogProb> masses);

  static FiniteDistribution uniform(std::size_t k);

  std::size_t alphabet_size() const { return masses_.size(); }
  LogProb mass(std::size_t i) const { return masses_[i]; }
  double mass_linear(std::size_t i) const { return masses_[i].linear(); }
  std::span<const LogProb> masses() const { return masses_; }

 private:
  std::vector<LogProb> masses_;
};

/// Normalizes nonnegative linear-domain weights into a distribution.
/// Rejects negative, NaN, or non-finite weights and all-zero input.
FiniteDistribution normalize(std::span<const double> weights);

/// Row-stochastic transition matrix W(j|i). Rows are validated to sum to 1
/// within `row_tol` at construction; both linear and log-domain entries are
/// kept since downstream users need each (sampling wants linear, spectra
/// want logs).
class TransitionKernel {
 public:
  TransitionKernel(std::size_t rows, std::size_t cols, std::vector<double> row_major,
                   double row_tol = 1e-12);

  static TransitionKernel identity(std::size_t k);

  std::size_t input_size() const { return rows_; }
  std::size_t output_size() const { return cols_; }

  double lin(std::size_t i, std::size_t j) const { return lin_[i * cols_ + j]; }
  /// log2 W(j|i); -inf for zero entries.
  double log2(std::size_t i, std::size_t j) const { return log_[i * cols_ + j]; }
  std::span<const double> row_lin(std::size_t i) const {
    return {lin_.data() + i * cols_, cols_};
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> lin_;
  std::vector<double> log_;
};

/// Pushes a distribution through a kernel: (W o d)(j) = sum_i d(i) W(j|i).
/// Alphabet mismatch throws std::domain_error.
FiniteDistribution apply_kernel(const TransitionKernel& w, const FiniteDistribution& d);

}  // namespace d0b
