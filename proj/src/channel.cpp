#include "d0bounds/channel.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <ios>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace d0b {

DenseChannel load_dense_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open channel file: " + path);

  auto fail = [&](long line, const std::string& what) {
    throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + what);
  };

  long line_no = 0;
  std::string line;
  std::size_t rows = 0, cols = 0;
  // Header line: "rows cols".
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream hs(line);
    long long r, c;
    if (!(hs >> r)) continue;  // blank line
    if (!(hs >> c) || r <= 0 || c <= 0) fail(line_no, "expected header 'rows cols'");
    std::string extra;
    if (hs >> extra) fail(line_no, "unexpected token '" + extra + "' after header");
    rows = static_cast<std::size_t>(r);
    cols = static_cast<std::size_t>(c);
    break;
  }
  if (rows == 0) fail(line_no, "missing 'rows cols' header");

  std::vector<double> entries;
  entries.reserve(rows * cols);
  while (entries.size() < rows * cols && std::getline(in, line)) {
    ++line_no;
    std::istringstream vs(line);
    std::string tok;
    while (vs >> tok) {
      if (entries.size() == rows * cols)
        fail(line_no, "more entries than rows*cols");
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        entries.push_back(v);
      } catch (const std::exception&) {
        fail(line_no, "not a probability: '" + tok + "'");
      }
    }
  }
  if (entries.size() < rows * cols)
    fail(line_no, "expected " + std::to_string(rows * cols) + " entries, got " +
                      std::to_string(entries.size()));

  // Validate at the file tolerance, then renormalize each row exactly so the
  // in-memory kernel meets the tight stochasticity invariant.
  for (std::size_t i = 0; i < rows; ++i) {
    KahanSum s;
    for (std::size_t j = 0; j < cols; ++j) {
      double v = entries[i * cols + j];
      if (std::isnan(v) || !std::isfinite(v) || v < 0.0)
        fail(line_no, "row " + std::to_string(i) + " has a negative or non-finite entry");
      s.add(v);
    }
    if (!(std::fabs(s.value() - 1.0) <= 1e-9))
      throw std::invalid_argument(path + ": row " + std::to_string(i) + " sums to " +
                                  std::to_string(s.value()) + ", off by more than 1e-9");
    for (std::size_t j = 0; j < cols; ++j) entries[i * cols + j] /= s.value();
  }
  return DenseChannel(rows, cols, std::move(entries));
}

BscChannel::BscChannel(std::int64_t n_, double p_) : n(n_), p(p_) {
  if (n < 1) throw std::domain_error("BscChannel: need n >= 1");
  if (!(p > 0.0 && p < 0.5)) throw std::domain_error("BscChannel: need crossover in (0, 0.5)");
}

RatioSpectrum joint_spectrum(const DenseChannel& w, const FiniteDistribution& input) {
  if (input.alphabet_size() != w.input_size())
    throw std::domain_error("joint_spectrum: input alphabet does not match channel");
  FiniteDistribution py = apply_kernel(w, input);
  const std::size_t xs = w.input_size(), ys = w.output_size();
  std::vector<LogProb> joint(xs * ys), prod(xs * ys);
  for (std::size_t x = 0; x < xs; ++x) {
    LogProb px = input.mass(x);
    for (std::size_t y = 0; y < ys; ++y) {
      joint[x * ys + y] = px * LogProb::from_log2(w.log2(x, y));
      prod[x * ys + y] = px * py.mass(y);
    }
  }
  return RatioSpectrum::build(FiniteDistribution(std::move(joint)),
                              FiniteDistribution(std::move(prod)));
}

RatioSpectrum bsc_spectrum(const BscChannel& ch) {
  const std::int64_t n = ch.n;
  const double lp = std::log2(ch.p);
  const double lq = std::log2(1.0 - ch.p);
  std::vector<SpectrumAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t d = 0; d <= n; ++d) {
    double ratio = static_cast<double>(n) + static_cast<double>(d) * lp +
                   static_cast<double>(n - d) * lq;
    LogProb p_mass = log_binomial_pmf(n, d, ch.p);
    LogProb q_mass =
        LogProb::from_log2(log2_binomial_coefficient(n, d) - static_cast<double>(n));
    atoms.push_back({ratio, p_mass, q_mass});
  }
  return RatioSpectrum::from_atoms(std::move(atoms));
}

DenseChannel bsc_product_dense(std::int64_t n, double p) {
  BscChannel check(n, p);  // reuse the parameter validation
  if (n > 10) throw std::domain_error("bsc_product_dense: capped at n <= 10");
  const std::size_t k = std::size_t{1} << n;
  const double lp = std::log2(p);
  const double lq = std::log2(1.0 - p);
  std::vector<double> entries(k * k);
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) {
      int d = std::popcount(x ^ y);
      entries[x * k + y] =
          std::exp2(static_cast<double>(d) * lp + static_cast<double>(n - d) * lq);
    }
  return DenseChannel(k, k, std::move(entries));
}

}  // namespace d0b
