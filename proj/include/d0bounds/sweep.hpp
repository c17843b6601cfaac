#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "d0bounds/bounds.hpp"
#include "d0bounds/exec.hpp"

namespace d0b {

// One finite-blocklength comparison run: every requested method evaluated at
// every blocklength for a binary symmetric channel.
struct SweepConfig {
  double crossover = 0.11;
  double epsilon = 1e-3;
  std::vector<std::int64_t> n_values;        // empty -> 100, 200, ..., 2000
  std::vector<Method> methods;               // empty -> all methods
  AchievabilityMode mode = AchievabilityMode::kExact;
  std::optional<double> eps_prime;           // pin the split instead of optimizing
};

// Points come back grouped by blocklength, methods in the order requested.
// Each (n, method) cell is independent, so the parallel mode fills a
// preallocated slot per cell and the output order never depends on timing.
std::vector<BoundPoint> run_sweep(const SweepConfig& cfg, Exec exec);

// "100:2000:100" (first:last:step), "100,250,400", or a single integer.
std::vector<std::int64_t> parse_n_spec(const std::string& spec);

// n,method,epsilon,log2_m,rate,aux with %.12g numbers; infinities print as
// inf/-inf.
void write_csv(std::ostream& os, const std::vector<BoundPoint>& points);

// JSON array of point objects; non-finite numbers are emitted as the strings
// "inf"/"-inf" since JSON has no literal for them.
void write_json(std::ostream& os, const std::vector<BoundPoint>& points);

}  // namespace d0b
