#pragma once

// Reference implementations used only by tests. Each one takes the most
// direct route to its answer and shares no code with the library path it
// checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "emogi/access.hpp"
#include "emogi/coalescer.hpp"
#include "emogi/graph.hpp"
#include "emogi/rng.hpp"

namespace oracle {

using emogi::CsrGraph;
using emogi::vertex_t;

/// Marks every byte of every active element in a bitmap, derives touched
/// 32-byte sectors, and emits one request per run of sectors in a 128-byte line.
inline std::vector<emogi::MemoryRequest> sector_bitmap_requests(const emogi::WarpAccess& wa) {
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (std::uint32_t l = 0; l < 32; ++l)
    if (wa.active(l)) {
      lo = std::min(lo, wa.lane_addr[l]);
      hi = std::max(hi, wa.lane_addr[l] + wa.elem_bytes);
    }
  if (lo == UINT64_MAX) return {};
  const std::uint64_t origin = lo / 128 * 128;
  const std::uint64_t span = (hi - origin + 127) / 128 * 128;
  std::vector<bool> bytes(span, false);
  for (std::uint32_t l = 0; l < 32; ++l)
    if (wa.active(l))
      for (std::uint32_t b = 0; b < wa.elem_bytes; ++b) bytes[wa.lane_addr[l] - origin + b] = true;

  std::vector<emogi::MemoryRequest> out;
  for (std::uint64_t line = 0; line < span; line += 128) {
    std::uint64_t run_start = 0, run_len = 0;
    for (std::uint64_t s = 0; s < 4; ++s) {
      bool touched = false;
      for (std::uint64_t b = 0; b < 32; ++b) touched = touched || bytes[line + s * 32 + b];
      if (touched) {
        if (run_len == 0) run_start = line + s * 32;
        ++run_len;
      }
      if ((!touched || s == 3) && run_len) {
        out.push_back({origin + run_start, static_cast<std::uint32_t>(run_len * 32), wa.region});
        run_len = 0;
      }
    }
  }
  return out;
}

inline std::vector<std::uint64_t> queue_bfs(const CsrGraph& g, vertex_t s) {
  std::vector<std::uint64_t> level(g.num_vertices(), UINT64_MAX);
  std::queue<vertex_t> q;
  level[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const vertex_t v = q.front();
    q.pop();
    for (std::uint64_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const vertex_t u = g.edges[e];
      if (level[u] == UINT64_MAX) {
        level[u] = level[v] + 1;
        q.push(u);
      }
    }
  }
  return level;
}

inline std::vector<std::uint64_t> dijkstra(const CsrGraph& g, vertex_t s) {
  std::vector<std::uint64_t> dist(g.num_vertices(), UINT64_MAX);
  using Item = std::pair<std::uint64_t, vertex_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d != dist[v]) continue;
    for (std::uint64_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const vertex_t u = g.edges[e];
      const std::uint64_t nd = d + (*g.weights)[e];
      if (nd < dist[u]) {
        dist[u] = nd;
        pq.push({nd, u});
      }
    }
  }
  return dist;
}

/// Component representative = smallest vertex id in the component.
inline std::vector<std::uint64_t> union_find_labels(const CsrGraph& g) {
  std::vector<vertex_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), vertex_t{0});
  std::function<vertex_t(vertex_t)> find = [&](vertex_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (vertex_t v = 0; v < g.num_vertices(); ++v)
    for (std::uint64_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const vertex_t a = find(v), b = find(g.edges[e]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::uint64_t> label(g.num_vertices());
  for (vertex_t v = 0; v < g.num_vertices(); ++v) label[v] = find(v);
  return label;
}

/// Dense Google-matrix power iteration run to a tight fixpoint.
inline std::vector<double> dense_pagerank(const CsrGraph& g, double damping) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (vertex_t v = 0; v < n; ++v) {
    const std::uint64_t deg = g.offsets[v + 1] - g.offsets[v];
    for (vertex_t u = 0; u < n; ++u) {
      double p = 0.0;
      if (deg == 0) {
        p = 1.0 / static_cast<double>(n);
      } else {
        for (std::uint64_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e)
          if (g.edges[e] == u) p += 1.0 / static_cast<double>(deg);
      }
      m[u][v] = damping * p + (1.0 - damping) / static_cast<double>(n);
    }
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  for (int it = 0; it < 10000; ++it) {
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) y[i] += m[i][j] * x[j];
      diff += std::abs(y[i] - x[i]);
    }
    x.swap(y);
    if (diff < 1e-15) break;
  }
  return x;
}

/// Erdos-Renyi style multigraph-free random graph with `edges` distinct
/// directed (u,v) pairs, no self loops.
inline CsrGraph random_graph(emogi::Rng& rng, std::uint64_t n, std::uint64_t edges, bool undirected) {
  std::set<std::pair<vertex_t, vertex_t>> seen;
  std::vector<std::pair<vertex_t, vertex_t>> list;
  const std::uint64_t max_pairs = n * (n - 1) / (undirected ? 2 : 1);
  edges = std::min(edges, max_pairs);
  while (list.size() < edges) {
    vertex_t a = rng.below(n), b = rng.below(n);
    if (a == b) continue;
    if (undirected && a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) list.emplace_back(a, b);
  }
  return emogi::from_edge_list(n, list, {}, !undirected);
}

/// (region, element index) multiset touched by active lanes.
inline std::map<std::pair<int, std::uint64_t>, int> element_coverage(
    const std::vector<emogi::WarpAccess>& trace, const emogi::AddressLayout& layout) {
  std::map<std::pair<int, std::uint64_t>, int> cov;
  for (const auto& wa : trace)
    for (std::uint32_t l = 0; l < 32; ++l)
      if (wa.active(l)) {
        const std::uint64_t base = wa.region == emogi::Region::Edges ? layout.edge_base : layout.weight_base;
        ++cov[{static_cast<int>(wa.region), (wa.lane_addr[l] - base) / wa.elem_bytes}];
      }
  return cov;
}

}  // namespace oracle
