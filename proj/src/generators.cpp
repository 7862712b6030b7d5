#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "emogi/error.hpp"
#include "emogi/graph.hpp"
#include "emogi/rng.hpp"

namespace emogi {

namespace {

// Draws `count` distinct destinations in [0, n) excluding `self`, in draw order.
void sample_neighbors(Rng& rng, std::uint64_t n, vertex_t self, std::uint64_t count,
                      std::vector<vertex_t>& out, std::vector<vertex_t>& pool) {
  if (count * 2 > n) {
    // Dense: partial Fisher-Yates over every candidate.
    pool.resize(n - 1);
    for (std::uint64_t i = 0, v = 0; v < n; ++v)
      if (v != self) pool[i++] = v;
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return;
  }
  std::unordered_set<vertex_t> seen;
  seen.reserve(count * 2);
  while (seen.size() < count) {
    vertex_t v = rng.below(n - 1);
    if (v >= self) ++v;
    if (seen.insert(v).second) out.push_back(v);
  }
}

CsrGraph build_from_degrees(const std::vector<std::uint64_t>& degrees, Rng& rng) {
  const std::uint64_t n = degrees.size();
  CsrGraph g;
  g.offsets.assign(n + 1, 0);
  for (std::uint64_t v = 0; v < n; ++v) g.offsets[v + 1] = g.offsets[v] + degrees[v];
  g.edges.reserve(g.offsets.back());
  std::vector<vertex_t> pool;
  for (std::uint64_t v = 0; v < n; ++v) sample_neighbors(rng, n, v, degrees[v], g.edges, pool);
  return g;
}

}  // namespace

CsrGraph generate_uniform(std::uint64_t num_vertices, std::uint64_t min_degree,
                          std::uint64_t max_degree, std::uint64_t seed) {
  if (min_degree > max_degree) throw ParameterError("min_degree > max_degree");
  if (max_degree >= num_vertices) throw ParameterError("max_degree must be < num_vertices");
  Rng rng(seed);
  std::vector<std::uint64_t> degrees(num_vertices);
  for (auto& d : degrees) d = rng.between(min_degree, max_degree);
  return build_from_degrees(degrees, rng);
}

CsrGraph generate_powerlaw(std::uint64_t num_vertices, double target_avg_degree, double exponent,
                           std::uint64_t seed) {
  if (!(exponent > 1.0)) throw ParameterError("power-law exponent must be > 1");
  if (!(target_avg_degree >= 1.0)) throw ParameterError("target average degree must be >= 1");
  if (num_vertices < 2) throw ParameterError("power-law graph needs at least 2 vertices");
  const std::uint64_t max_degree = num_vertices - 1;
  if (target_avg_degree > static_cast<double>(max_degree))
    throw ParameterError("target average degree exceeds V-1");

  // Inverse-CDF sample of a continuous Pareto(x_min=1) truncated at
  // max_degree+1; flooring gives the discrete truncated law on [1, max_degree].
  Rng rng(seed);
  const double a = 1.0 - exponent;
  const double tail = std::pow(static_cast<double>(max_degree) + 1.0, a);
  std::vector<double> raw(num_vertices);
  for (auto& x : raw) {
    const double u = rng.unit();
    x = std::floor(std::pow(1.0 - u * (1.0 - tail), 1.0 / a));
  }

  // Scale so the mean degree lands on target: bisection on the scale factor.
  auto degrees_for = [&](double scale, std::vector<std::uint64_t>& out) {
    double sum = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const double d = std::clamp(std::round(raw[i] * scale), 1.0, static_cast<double>(max_degree));
      out[i] = static_cast<std::uint64_t>(d);
      sum += d;
    }
    return sum / static_cast<double>(raw.size());
  };
  std::vector<std::uint64_t> degrees(num_vertices);
  double lo = 0.0;
  double hi = static_cast<double>(max_degree);
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (degrees_for(mid, degrees) < target_avg_degree)
      lo = mid;
    else
      hi = mid;
  }
  degrees_for(hi, degrees);
  return build_from_degrees(degrees, rng);
}

}  // namespace emogi
