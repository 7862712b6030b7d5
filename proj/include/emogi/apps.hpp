#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "emogi/access.hpp"
#include "emogi/coalescer.hpp"
#include "emogi/graph.hpp"

namespace emogi {

inline constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();

struct TraversalOptions {
  AccessStrategy strategy = AccessStrategy::MergedAligned;
  /// Defaults to default_layout(g).
  std::optional<AddressLayout> layout;
  /// Sees every warp access in trace order (e.g. a UvmSimulator).
  AccessSink observer;
};

/// BFS levels, SSSP distances and CC labels go to `values`; PR fills `ranks`.
struct TraversalResult {
  std::vector<std::uint64_t> values;
  std::vector<double> ranks;
  std::uint64_t iterations = 0;
  std::vector<TrafficStats> per_iteration;
  std::uint64_t edges_traversed = 0;
  bool multigraph = false;

  TrafficStats total_traffic() const;
};

/// Level-synchronous BFS. Iterations = deepest level + 1.
TraversalResult bfs(const CsrGraph& g, vertex_t source, const TraversalOptions& opts = {});

/// Frontier Bellman-Ford over the edge weights; traffic covers both lists.
TraversalResult sssp(const CsrGraph& g, vertex_t source, const TraversalOptions& opts = {});

/// Min-label propagation starting from every vertex. Undirected graphs only.
TraversalResult cc(const CsrGraph& g, const TraversalOptions& opts = {});

struct PageRankParams {
  double damping = 0.85;
  std::uint64_t max_iters = 100;
  double tol = 1e-6;
};

/// Synchronous push PageRank, full edge scan per iteration, dangling mass
/// spread uniformly. Stops once the L1 change drops below tol.
TraversalResult pagerank(const CsrGraph& g, const PageRankParams& params = {},
                         const TraversalOptions& opts = {});

inline TraversalResult bfs(const CsrGraph& g, vertex_t source, AccessStrategy s) {
  return bfs(g, source, TraversalOptions{s, {}, {}});
}
inline TraversalResult sssp(const CsrGraph& g, vertex_t source, AccessStrategy s) {
  return sssp(g, source, TraversalOptions{s, {}, {}});
}
inline TraversalResult cc(const CsrGraph& g, AccessStrategy s) { return cc(g, TraversalOptions{s, {}, {}}); }

}  // namespace emogi
