#pragma once

#include <cstdint>
#include <string>

#include "d0bounds/distribution.hpp"
#include "d0bounds/spectrum.hpp"

namespace d0b {

/// A dense channel is just a row-stochastic kernel: W(y|x) over finite
/// alphabets.
using DenseChannel = TransitionKernel;

/// Reads a dense channel from a text file: first line "rows cols", then
/// rows*cols whitespace-separated probabilities in row-major order. Rows must
/// sum to 1 within 1e-9 and are renormalized exactly afterwards. Parse
/// problems throw std::invalid_argument naming the offending line; open
/// failures throw std::ios_base::failure.
DenseChannel load_dense_channel(const std::string& path);

/// Binary symmetric channel used n times, crossover p in (0, 0.5).
struct BscChannel {
  std::int64_t n;
  double p;
  BscChannel(std::int64_t n_, double p_);
};

/// Spectrum of the joint input-output pair against the product of its
/// marginals: P_XY(x,y) = in(x) W(y|x) versus Q = P_X x P_Y with
/// P_Y = apply_kernel(w, in). This is the object the channel bounds smooth.
RatioSpectrum joint_spectrum(const DenseChannel& w, const FiniteDistribution& input);

/// The same spectrum for n uses of a BSC with uniform input, built from the
/// Hamming-weight structure instead of the 2^n x 2^n product alphabet:
/// n+1 atoms, one per distance d, with
///   log_ratio = n + d log2 p + (n-d) log2(1-p),
///   p_mass    = C(n,d) p^d (1-p)^(n-d),
///   q_mass    = C(n,d) 2^-n.
/// Atoms arrive already ratio-sorted (ascending d is descending ratio).
RatioSpectrum bsc_spectrum(const BscChannel& ch);

/// Explicit 2^n x 2^n dense product of n BSC uses. Intended for the
/// structural cross-checks and the decoder simulations; n is capped at 10.
DenseChannel bsc_product_dense(std::int64_t n, double p);

}  // namespace d0b
