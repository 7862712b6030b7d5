#include "emogi/apps.hpp"

#include <cmath>
#include <string>

#include "emogi/error.hpp"

namespace emogi {

namespace {

// Owns the per-run status arrays and traffic bookkeeping shared by all
// level-synchronous drivers.
class FrontierRun {
 public:
  FrontierRun(const CsrGraph& g, const TraversalOptions& opts, bool include_weights,
              TraversalResult& result)
      : g_(g),
        opts_(opts),
        trace_{opts.strategy, include_weights, opts.layout.value_or(default_layout(g))},
        result_(result),
        active_(g.num_vertices(), 0),
        next_(g.num_vertices(), 0) {}

  void activate(vertex_t v) { active_[v] = 1; }
  void activate_next(vertex_t v) { next_[v] = 1; }
  void activate_all() { std::fill(active_.begin(), active_.end(), 1); }

  /// Collects the active vertices (full status-array scan), clears their
  /// flags, and records the iteration's interconnect traffic. Returns false
  /// when nothing is active.
  bool begin_iteration() {
    list_.clear();
    for (vertex_t v = 0; v < g_.num_vertices(); ++v)
      if (active_[v]) {
        list_.push_back(v);
        active_[v] = 0;
      }
    if (list_.empty()) return false;
    record_traffic([&](const AccessSink& sink) { trace_frontier(g_, list_, trace_, sink); });
    for (vertex_t v : list_) result_.edges_traversed += g_.degree(v);
    return true;
  }

  /// Full-graph iteration without materializing the frontier list.
  void record_full_scan() {
    record_traffic([&](const AccessSink& sink) { trace_all(g_, trace_, sink); });
    result_.edges_traversed += g_.num_edges();
  }

  const std::vector<vertex_t>& frontier() const { return list_; }

  void end_iteration() {
    active_.swap(next_);
    ++result_.iterations;
  }

 private:
  template <class Trace>
  void record_traffic(Trace&& trace) {
    TrafficCounter counter;
    if (opts_.observer) {
      trace([&](const WarpAccess& wa) {
        counter(wa);
        opts_.observer(wa);
      });
    } else {
      trace([&](const WarpAccess& wa) { counter(wa); });
    }
    result_.per_iteration.push_back(counter.stats());
  }

  const CsrGraph& g_;
  const TraversalOptions& opts_;
  TraceOptions trace_;
  TraversalResult& result_;
  std::vector<char> active_;
  std::vector<char> next_;
  std::vector<vertex_t> list_;
};

void check_source(const CsrGraph& g, vertex_t source) {
  if (source >= g.num_vertices())
    throw ParameterError("source vertex " + std::to_string(source) + " out of range");
}

}  // namespace

TrafficStats TraversalResult::total_traffic() const {
  TrafficStats total;
  for (const TrafficStats& s : per_iteration) total += s;
  return total;
}

TraversalResult bfs(const CsrGraph& g, vertex_t source, const TraversalOptions& opts) {
  check_source(g, source);
  TraversalResult r;
  r.values.assign(g.num_vertices(), kUnreached);
  r.values[source] = 0;
  FrontierRun run(g, opts, false, r);
  run.activate(source);
  while (run.begin_iteration()) {
    const std::uint64_t next_level = r.iterations + 1;
    for (vertex_t v : run.frontier())
      for (vertex_t u : g.neighbors(v))
        if (r.values[u] == kUnreached) {
          r.values[u] = next_level;
          run.activate_next(u);
        }
    run.end_iteration();
  }
  return r;
}

TraversalResult sssp(const CsrGraph& g, vertex_t source, const TraversalOptions& opts) {
  check_source(g, source);
  if (!g.has_weights()) throw ParameterError("SSSP requires edge weights");
  const auto& w = *g.weights;
  TraversalResult r;
  r.values.assign(g.num_vertices(), kUnreached);
  r.values[source] = 0;
  FrontierRun run(g, opts, true, r);
  run.activate(source);
  while (run.begin_iteration()) {
    for (vertex_t v : run.frontier()) {
      const std::uint64_t dv = r.values[v];
      for (std::uint64_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        const vertex_t u = g.edges[e];
        const std::uint64_t candidate = dv + w[e];
        if (candidate < r.values[u]) {
          r.values[u] = candidate;
          run.activate_next(u);
        }
      }
    }
    run.end_iteration();
  }
  return r;
}

TraversalResult cc(const CsrGraph& g, const TraversalOptions& opts) {
  if (g.directed) throw ParameterError("connected components needs an undirected graph");
  TraversalResult r;
  r.values.resize(g.num_vertices());
  for (vertex_t v = 0; v < g.num_vertices(); ++v) r.values[v] = v;
  FrontierRun run(g, opts, false, r);
  run.activate_all();
  while (run.begin_iteration()) {
    for (vertex_t v : run.frontier()) {
      const std::uint64_t label = r.values[v];
      for (vertex_t u : g.neighbors(v))
        if (label < r.values[u]) {
          r.values[u] = label;
          run.activate_next(u);
        }
    }
    run.end_iteration();
  }
  return r;
}

TraversalResult pagerank(const CsrGraph& g, const PageRankParams& params,
                         const TraversalOptions& opts) {
  if (!(params.damping > 0.0 && params.damping < 1.0))
    throw ParameterError("damping must lie in (0, 1)");
  if (params.max_iters == 0) throw ParameterError("max_iters must be positive");
  const std::uint64_t n = g.num_vertices();
  if (n == 0) throw ParameterError("PageRank needs at least one vertex");

  TraversalResult r;
  r.multigraph = has_duplicate_edges(g);
  const double d = params.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  FrontierRun run(g, opts, false, r);

  while (r.iterations < params.max_iters) {
    run.record_full_scan();
    double dangling = 0.0;
    std::fill(next.begin(), next.end(), 0.0);
    for (vertex_t v = 0; v < n; ++v) {
      const std::uint64_t deg = g.degree(v);
      if (deg == 0) {
        dangling += rank[v];
        continue;
      }
      const double share = d * rank[v] / static_cast<double>(deg);
      for (vertex_t u : g.neighbors(v)) next[u] += share;
    }
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    double change = 0.0;
    for (vertex_t v = 0; v < n; ++v) {
      next[v] += base;
      change += std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    run.end_iteration();
    if (change < params.tol) break;
  }

  double sum = 0.0;
  for (double x : rank) sum += x;
  for (double& x : rank) x /= sum;
  r.ranks = std::move(rank);
  return r;
}

}  // namespace emogi
