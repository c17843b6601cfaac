#include "d0bounds/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <iterator>
#include <stdexcept>

#include "d0bounds/channel.hpp"
#include "json.hpp"

namespace d0b {

namespace {

BoundPoint eval_cell(const SweepConfig& cfg, std::int64_t n, Method method) {
  const BscChannel ch{n, cfg.crossover};
  switch (method) {
    case Method::kConverseD0:
      return converse_bound(bsc_spectrum(ch), n, cfg.epsilon);
    case Method::kAchievabilityD0:
      return achievability_bound(bsc_spectrum(ch), n, cfg.epsilon, cfg.mode,
                                 cfg.eps_prime);
    case Method::kGallager:
      return gallager_bsc(n, cfg.crossover, cfg.epsilon);
    case Method::kRcu:
      return rcu_bsc(n, cfg.crossover, cfg.epsilon);
    case Method::kDt:
      return dt_bsc(n, cfg.crossover, cfg.epsilon);
    case Method::kNpConverse:
      return np_converse_bsc(ch, cfg.epsilon);
  }
  throw std::logic_error("run_sweep: unhandled method");
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<BoundPoint> run_sweep(const SweepConfig& cfg, Exec exec) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw std::invalid_argument("run_sweep: epsilon must be in (0, 1)");
  std::vector<std::int64_t> ns = cfg.n_values;
  if (ns.empty())
    for (std::int64_t n = 100; n <= 2000; n += 100) ns.push_back(n);
  std::vector<Method> methods = cfg.methods;
  if (methods.empty())
    methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1)
      throw std::invalid_argument("run_sweep: n values must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw std::invalid_argument("run_sweep: n values must be ascending");
  }

  const std::size_t cells = ns.size() * methods.size();
  std::vector<BoundPoint> points(cells);
  const auto fill = [&](std::size_t idx) {
    const std::size_t ni = idx / methods.size();
    const std::size_t mi = idx % methods.size();
    points[idx] = eval_cell(cfg, ns[ni], methods[mi]);
  };

  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t idx = 0; idx < cells; ++idx) fill(idx);
  } else {
    for (std::size_t idx = 0; idx < cells; ++idx) fill(idx);
  }
  return points;
}

std::vector<std::int64_t> parse_n_spec(const std::string& spec) {
  auto parse_int = [&](const std::string& tok) -> std::int64_t {
    std::size_t pos = 0;
    std::int64_t v;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad blocklength token '" + tok + "'");
    }
    if (pos != tok.size() || v < 1)
      throw std::invalid_argument("bad blocklength token '" + tok + "'");
    return v;
  };

  std::vector<std::int64_t> out;
  if (spec.find(':') != std::string::npos) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos)
      throw std::invalid_argument("range spec must be first:last:step");
    const std::int64_t first = parse_int(spec.substr(0, c1));
    const std::int64_t last = parse_int(spec.substr(c1 + 1, c2 - c1 - 1));
    const std::int64_t step = parse_int(spec.substr(c2 + 1));
    if (last < first)
      throw std::invalid_argument("range spec must have first <= last");
    for (std::int64_t n = first; n <= last; n += step) out.push_back(n);
    return out;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto end = comma == std::string::npos ? spec.size() : comma;
    out.push_back(parse_int(spec.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<BoundPoint>& points) {
  os << "n,method,epsilon,log2_m,rate,aux\n";
  for (const auto& pt : points) {
    os << pt.n << ',' << method_tag(pt.method) << ',' << fmt_double(pt.epsilon)
       << ',' << fmt_double(pt.log2_m) << ',' << fmt_double(pt.rate) << ','
       << pt.aux << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<BoundPoint>& points) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& pt : points) {
    nlohmann::json obj;
    obj["n"] = pt.n;
    obj["method"] = method_tag(pt.method);
    obj["epsilon"] = pt.epsilon;
    for (auto [key, v] : {std::pair<const char*, double>{"log2_m", pt.log2_m},
                          {"rate", pt.rate}}) {
      if (std::isfinite(v))
        obj[key] = v;
      else
        obj[key] = v > 0 ? "inf" : "-inf";
    }
    obj["aux"] = pt.aux;
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace d0b
