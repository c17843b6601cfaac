#include "d0bounds/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace d0b {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LogProb sum_masses(std::span<const SpectrumAtom> atoms, LogProb SpectrumAtom::*field) {
  std::vector<LogProb> v;
  v.reserve(atoms.size());
  for (const auto& a : atoms) v.push_back(a.*field);
  return log_sum_exp2(v);
}

// Merges [first, last) into a single atom; multi-member clusters get their
// ratio re-derived from the merged masses so the ratio/mass identity stays
// exact, single members keep their ratio untouched.
SpectrumAtom merge_run(std::span<const SpectrumAtom> run) {
  if (run.size() == 1) return run[0];
  std::vector<LogProb> ps, qs;
  ps.reserve(run.size());
  qs.reserve(run.size());
  for (const auto& a : run) {
    ps.push_back(a.p_mass);
    qs.push_back(a.q_mass);
  }
  LogProb p = log_sum_exp2(ps);
  LogProb q = log_sum_exp2(qs);
  double ratio = q.is_zero() ? kInf : p.log2() - q.log2();
  return SpectrumAtom{ratio, p, q};
}

// Sorts descending and merges runs selected by `same_cluster(anchor, r)`.
// A final pass re-merges any adjacent pair whose re-derived ratios are no
// longer strictly decreasing (possible only through last-ulp wobble).
std::vector<SpectrumAtom> canonicalize(std::vector<SpectrumAtom> atoms,
                                       double merge_tol) {
  std::erase_if(atoms, [](const SpectrumAtom& a) { return a.p_mass.is_zero(); });
  std::sort(atoms.begin(), atoms.end(), [](const SpectrumAtom& a, const SpectrumAtom& b) {
    return a.log_ratio > b.log_ratio;
  });
  std::vector<SpectrumAtom> out;
  std::size_t i = 0;
  while (i < atoms.size()) {
    double anchor = atoms[i].log_ratio;
    std::size_t j = i + 1;
    while (j < atoms.size()) {
      double r = atoms[j].log_ratio;
      bool same = (anchor == kInf && r == kInf) ||
                  (anchor != kInf && r != kInf && anchor - r <= merge_tol);
      if (!same) break;
      ++j;
    }
    out.push_back(merge_run(std::span<const SpectrumAtom>(atoms.data() + i, j - i)));
    i = j;
  }
  // Enforce strict descent; re-derived ratios can collide only by an ulp.
  for (std::size_t k = 1; k < out.size();) {
    if (out[k - 1].log_ratio > out[k].log_ratio) {
      ++k;
      continue;
    }
    SpectrumAtom pair[2] = {out[k - 1], out[k]};
    out[k - 1] = merge_run(pair);
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
    if (k > 1) --k;
  }
  return out;
}

}  // namespace

RatioSpectrum RatioSpectrum::build(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.alphabet_size() != q.alphabet_size())
    throw std::domain_error("RatioSpectrum::build: alphabet sizes differ");
  std::vector<SpectrumAtom> atoms;
  atoms.reserve(p.alphabet_size());
  for (std::size_t i = 0; i < p.alphabet_size(); ++i) {
    if (p.mass(i).is_zero()) continue;
    double ratio = q.mass(i).is_zero() ? kInf : p.mass(i).log2() - q.mass(i).log2();
    atoms.push_back({ratio, p.mass(i), q.mass(i)});
  }
  return from_atoms(std::move(atoms));
}

RatioSpectrum RatioSpectrum::from_atoms(std::vector<SpectrumAtom> atoms) {
  // merge_tol = 0 keeps exactly-equal ratios only.
  return RatioSpectrum(canonicalize(std::move(atoms), 0.0));
}

LogProb RatioSpectrum::total_p() const { return sum_masses(atoms_, &SpectrumAtom::p_mass); }
LogProb RatioSpectrum::total_q() const { return sum_masses(atoms_, &SpectrumAtom::q_mass); }

RatioSpectrum convolve_spectra(const RatioSpectrum& a, const RatioSpectrum& b,
                               double merge_tol) {
  if (!(merge_tol >= 0.0))
    throw std::domain_error("convolve_spectra: merge_tol must be nonnegative");
  std::vector<SpectrumAtom> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& x : a.atoms())
    for (const auto& y : b.atoms())
      prod.push_back({x.log_ratio + y.log_ratio, x.p_mass * y.p_mass, x.q_mass * y.q_mass});
  return RatioSpectrum(canonicalize(std::move(prod), merge_tol));
}

RatioSpectrum convolve_power(const RatioSpectrum& s, std::uint32_t n, double merge_tol) {
  std::vector<SpectrumAtom> unit{{0.0, LogProb::one(), LogProb::one()}};
  RatioSpectrum result = RatioSpectrum::from_atoms(std::move(unit));
  if (n == 0) return result;
  RatioSpectrum base = s;
  while (true) {
    if (n & 1u) result = convolve_spectra(result, base, merge_tol);
    n >>= 1u;
    if (n == 0) break;
    base = convolve_spectra(base, base, merge_tol);
  }
  return result;
}

}  // namespace d0b
