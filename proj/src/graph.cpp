#include "emogi/graph.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "emogi/error.hpp"
#include "emogi/rng.hpp"

namespace emogi {

namespace {

constexpr std::uint64_t kFourByteVertexLimit = std::uint64_t{1} << 32;

bool valid_width(std::uint32_t bytes) { return bytes == 4 || bytes == 8; }

}  // namespace

void validate(const CsrGraph& g) {
  if (!valid_width(g.edge_elem_bytes) || !valid_width(g.weight_elem_bytes))
    throw DatatypeError("element width must be 4 or 8 bytes");
  if (g.offsets.empty()) throw InvariantError("offsets array is empty");
  const std::uint64_t nv = g.num_vertices();
  const std::uint64_t ne = g.num_edges();
  if (g.edge_elem_bytes == 4 && nv > kFourByteVertexLimit)
    throw DatatypeError("4-byte edge list cannot address " + std::to_string(nv) + " vertices");
  if (g.offsets.front() != 0) throw InvariantError("offsets[0] must be 0");
  if (g.offsets.back() != ne)
    throw InvariantError("offsets[V] = " + std::to_string(g.offsets.back()) +
                         " but edge count is " + std::to_string(ne));
  for (std::uint64_t v = 0; v < nv; ++v)
    if (g.offsets[v + 1] < g.offsets[v])
      throw InvariantError("offsets decrease at vertex " + std::to_string(v));
  for (std::uint64_t i = 0; i < ne; ++i)
    if (g.edges[i] >= nv)
      throw InvariantError("edge " + std::to_string(i) + " points to vertex " +
                           std::to_string(g.edges[i]) + " >= V");
  if (g.weights && g.weights->size() != ne)
    throw InvariantError("weights array length differs from edge count");
}

CsrGraph from_edge_list(std::uint64_t num_vertices,
                        std::span<const std::pair<vertex_t, vertex_t>> edges,
                        std::span<const std::uint64_t> weights, bool directed,
                        std::uint32_t edge_elem_bytes) {
  if (!weights.empty() && weights.size() != edges.size())
    throw ParameterError("weights must match edges one-to-one");
  const bool weighted = !weights.empty();
  const std::uint64_t per_edge = directed ? 1 : 2;

  CsrGraph g;
  g.directed = directed;
  g.edge_elem_bytes = edge_elem_bytes;
  g.offsets.assign(num_vertices + 1, 0);
  for (const auto& [src, dst] : edges) {
    ++g.offsets[src + 1];
    if (!directed) ++g.offsets[dst + 1];
  }
  for (std::uint64_t v = 0; v < num_vertices; ++v) g.offsets[v + 1] += g.offsets[v];

  g.edges.resize(edges.size() * per_edge);
  if (weighted) g.weights.emplace(edges.size() * per_edge);
  std::vector<std::uint64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  // Both directions are placed in file order, so a vertex's list interleaves
  // its out- and in-edges the way they were read.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [src, dst] = edges[i];
    std::uint64_t at = cursor[src]++;
    g.edges[at] = dst;
    if (weighted) (*g.weights)[at] = weights[i];
    if (!directed) {
      at = cursor[dst]++;
      g.edges[at] = src;
      if (weighted) (*g.weights)[at] = weights[i];
    }
  }
  return g;
}

CsrGraph symmetrize(const CsrGraph& g) {
  std::vector<std::pair<vertex_t, vertex_t>> list;
  list.reserve(g.num_edges());
  for (vertex_t v = 0; v < g.num_vertices(); ++v)
    for (vertex_t u : g.neighbors(v)) list.emplace_back(v, u);
  std::span<const std::uint64_t> w;
  if (g.weights) w = *g.weights;
  CsrGraph out = from_edge_list(g.num_vertices(), list, w, false, g.edge_elem_bytes);
  out.weight_elem_bytes = g.weight_elem_bytes;
  return out;
}

bool has_duplicate_edges(const CsrGraph& g) {
  std::vector<vertex_t> scratch;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    scratch.assign(nb.begin(), nb.end());
    std::sort(scratch.begin(), scratch.end());
    if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end()) return true;
  }
  return false;
}

void ensure_weights(CsrGraph& g, std::uint64_t seed, std::uint64_t lo, std::uint64_t hi) {
  if (g.weights) return;
  if (lo > hi) throw ParameterError("weight range is empty");
  Rng rng(seed);
  std::vector<std::uint64_t> w(g.num_edges());
  for (auto& x : w) x = rng.between(lo, hi);
  g.weights = std::move(w);
}

DegreeCdf degree_cdf(const CsrGraph& g) {
  DegreeCdf cdf;
  const std::uint64_t ne = g.num_edges();
  if (ne == 0) return cdf;
  std::map<std::uint64_t, std::uint64_t> edges_at_degree;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) {
    const std::uint64_t d = g.degree(v);
    if (d) edges_at_degree[d] += d;
  }
  std::uint64_t cumulative = 0;
  for (const auto& [d, count] : edges_at_degree) {
    cumulative += count;
    cdf.push_back({d, static_cast<double>(cumulative) / static_cast<double>(ne)});
  }
  return cdf;
}

std::vector<vertex_t> pick_sources(const CsrGraph& g, std::uint64_t n, std::uint64_t seed) {
  std::vector<vertex_t> eligible;
  for (vertex_t v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) > 0) eligible.push_back(v);
  if (eligible.size() < n)
    throw ParameterError("requested " + std::to_string(n) + " sources but only " +
                         std::to_string(eligible.size()) + " vertices have outgoing edges");
  Rng rng(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + rng.below(eligible.size() - i);
    std::swap(eligible[i], eligible[j]);
  }
  eligible.resize(n);
  return eligible;
}

}  // namespace emogi
