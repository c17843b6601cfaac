#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "d0bounds/distribution.hpp"
#include "d0bounds/logprob.hpp"

namespace d0b {

/// Default tolerance (in log2 units) for merging nearly-equal likelihood
/// ratios during convolution.
inline constexpr double kDefaultMergeTol = 1e-9;

/// One point of a likelihood-ratio spectrum: log_ratio = log2(P/Q) together
/// with the P- and Q-mass it carries. q_mass may be the zero sentinel, in
/// which case log_ratio is +inf. p_mass is never zero.
struct SpectrumAtom {
  double log_ratio;
  LogProb p_mass;
  LogProb q_mass;
};

/// Likelihood-ratio spectrum of a pair (P, Q) on a common alphabet: atoms are
/// kept sorted by log_ratio strictly descending, equal ratios merged,
/// zero-P-mass outcomes dropped. All the divergence machinery works on this
/// merged view rather than on raw alphabets.
class RatioSpectrum {
 public:
  /// Groups the alphabet of (p, q) by likelihood ratio.
  static RatioSpectrum build(const FiniteDistribution& p, const FiniteDistribution& q);

  /// Canonicalizes a raw atom list: drops zero-P atoms, sorts descending,
  /// merges exactly-equal ratios.
  static RatioSpectrum from_atoms(std::vector<SpectrumAtom> atoms);

  std::span<const SpectrumAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  LogProb total_p() const;
  LogProb total_q() const;

 private:
  friend RatioSpectrum convolve_spectra(const RatioSpectrum&, const RatioSpectrum&, double);
  explicit RatioSpectrum(std::vector<SpectrumAtom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<SpectrumAtom> atoms_;
};

/// Spectrum of a product pair: log-ratios add, masses multiply. Atoms whose
/// ratios land within merge_tol of a cluster anchor are merged, with the
/// merged ratio re-derived from the merged masses.
RatioSpectrum convolve_spectra(const RatioSpectrum& a, const RatioSpectrum& b,
                               double merge_tol = kDefaultMergeTol);

/// n-fold self-convolution via iterated squaring. n = 0 gives the identity
/// spectrum (single atom at ratio 0 with unit masses).
RatioSpectrum convolve_power(const RatioSpectrum& s, std::uint32_t n,
                             double merge_tol = kDefaultMergeTol);

}  // namespace d0b
