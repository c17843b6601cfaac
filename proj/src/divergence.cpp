#include "d0bounds/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace d0b {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double value_of(LogProb q_captured) {
  return q_captured.is_zero() ? kInf : -q_captured.log2();
}

}  // namespace

TestCapture evaluate_test(const RatioSpectrum& s, const ThresholdTest& t) {
  KahanSum p_lin, q_lin;
  std::vector<LogProb> q_terms;
  for (const auto& a : s.atoms()) {
    if (a.log_ratio > t.boundary_log_ratio) {
      p_lin.add(a.p_mass.linear());
      q_lin.add(a.q_mass.linear());
      q_terms.push_back(a.q_mass);
    } else if (a.log_ratio == t.boundary_log_ratio && t.gamma > 0.0) {
      p_lin.add(t.gamma * a.p_mass.linear());
      q_lin.add(t.gamma * a.q_mass.linear());
      q_terms.push_back(LogProb::from_log2(std::log2(t.gamma)) * a.q_mass);
    }
  }
  return {p_lin.value(), log_sum_exp2(q_terms), q_lin.value()};
}

double renyi0_divergence(const RatioSpectrum& s) { return value_of(s.total_q()); }

D0Result smooth0_divergence(const RatioSpectrum& s, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::domain_error("smooth0_divergence: delta must lie in [0, 1]");
  const auto atoms = s.atoms();

  // delta = 0 forces Phi = 1 on all of P's support; return the unsmoothed
  // divergence through the identical code path so the reduction is exact.
  if (delta == 0.0) {
    LogProb q = s.total_q();
    KahanSum p_lin, q_lin;
    for (const auto& a : atoms) {
      p_lin.add(a.p_mass.linear());
      q_lin.add(a.q_mass.linear());
    }
    double boundary = atoms.empty() ? kInf : atoms.back().log_ratio;
    double gamma = atoms.empty() ? 0.0 : 1.0;
    return {value_of(q), {boundary, gamma}, p_lin.value(), q, q_lin.value()};
  }

  const double target = 1.0 - delta;
  if (target <= 0.0 || atoms.empty())
    return {kInf, {kInf, 0.0}, 0.0, LogProb::zero(), 0.0};

  KahanSum cum_p;
  std::size_t boundary = atoms.size();  // index of the fractional atom
  double gamma = 1.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double pl = atoms[i].p_mass.linear();
    if (cum_p.value() + pl < target) {
      cum_p.add(pl);
      continue;
    }
    boundary = i;
    gamma = std::clamp((target - cum_p.value()) / pl, 0.0, 1.0);
    break;
  }
  if (boundary == atoms.size()) {
    // Masses sum to 1 only up to rounding, so the cumulative fill can fall a
    // few ulp short of the target: the whole support is the answer.
    boundary = atoms.size() - 1;
    gamma = 1.0;
    cum_p.add(-atoms[boundary].p_mass.linear());  // keep cum_p = mass before boundary
  }

  std::vector<LogProb> q_terms;
  q_terms.reserve(boundary + 1);
  KahanSum q_lin;
  for (std::size_t i = 0; i < boundary; ++i) {
    q_terms.push_back(atoms[i].q_mass);
    q_lin.add(atoms[i].q_mass.linear());
  }
  if (gamma >= 1.0) {
    q_terms.push_back(atoms[boundary].q_mass);
    q_lin.add(atoms[boundary].q_mass.linear());
  } else if (gamma > 0.0) {
    q_terms.push_back(LogProb::from_log2(std::log2(gamma)) * atoms[boundary].q_mass);
    q_lin.add(gamma * atoms[boundary].q_mass.linear());
  }
  LogProb q = log_sum_exp2(q_terms);
  double p_captured = cum_p.value() + gamma * atoms[boundary].p_mass.linear();
  return {value_of(q), {atoms[boundary].log_ratio, gamma}, p_captured, q, q_lin.value()};
}

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.alphabet_size() != q.alphabet_size())
    throw std::domain_error("kl_divergence: alphabet sizes differ");
  KahanSum s;
  for (std::size_t i = 0; i < p.alphabet_size(); ++i) {
    if (p.mass(i).is_zero()) continue;
    if (q.mass(i).is_zero()) return kInf;
    s.add(p.mass_linear(i) * (p.mass(i).log2() - q.mass(i).log2()));
  }
  return s.value();
}

}  // namespace d0b
