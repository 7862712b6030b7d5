#include "emogi/access.hpp"

#include <algorithm>
#include <string>

#include "emogi/error.hpp"

namespace emogi {

namespace {

void check_region(std::uint32_t elem_bytes, std::uint64_t base) {
  if (elem_bytes != 4 && elem_bytes != 8) throw ParameterError("element size must be 4 or 8 bytes");
  if (base % kLineBytes != 0) throw ParameterError("region base address must be 128-byte aligned");
}

void emit_one_warp(std::uint64_t first_elem, std::uint64_t lo, std::uint64_t hi,
                   std::uint32_t elem_bytes, std::uint64_t base, Region region,
                   const AccessSink& sink) {
  WarpAccess wa;
  wa.region = region;
  wa.elem_bytes = elem_bytes;
  for (std::uint32_t lane = 0; lane < kWarpSize; ++lane) {
    const std::uint64_t idx = first_elem + lane;
    if (idx >= lo && idx < hi) wa.set(lane, base + idx * elem_bytes);
  }
  if (wa.active_mask) sink(wa);
}

// Sink wrapper that follows every edge-list access with the matching
// weight-list access.
AccessSink with_weight_mirror(const CsrGraph& g, const TraceOptions& opts, const AccessSink& sink) {
  if (!opts.include_weights) return sink;
  if (!g.has_weights()) throw ParameterError("graph has no weights to trace");
  const std::uint64_t edge_base = opts.layout.edge_base;
  const std::uint64_t weight_base = opts.layout.weight_base;
  const std::uint32_t eb = g.edge_elem_bytes;
  const std::uint32_t wb = g.weight_elem_bytes;
  check_region(wb, weight_base);
  return [=, &sink](const WarpAccess& edge_access) {
    sink(edge_access);
    WarpAccess w;
    w.region = Region::Weights;
    w.elem_bytes = wb;
    for (std::uint32_t lane = 0; lane < kWarpSize; ++lane)
      if (edge_access.active(lane))
        w.set(lane, weight_base + (edge_access.lane_addr[lane] - edge_base) / eb * wb);
    sink(w);
  };
}

template <class VertexAt>
void trace_impl(const CsrGraph& g, std::uint64_t count, VertexAt vertex_at,
                const TraceOptions& opts, const AccessSink& out) {
  const std::uint32_t eb = g.edge_elem_bytes;
  const std::uint64_t base = opts.layout.edge_base;
  check_region(eb, base);
  const AccessSink sink = with_weight_mirror(g, opts, out);

  if (opts.strategy != AccessStrategy::Naive) {
    for (std::uint64_t i = 0; i < count; ++i) {
      const vertex_t v = vertex_at(i);
      emit_list_accesses(opts.strategy, g.offsets[v], g.offsets[v + 1], eb, base, Region::Edges,
                         sink);
    }
    return;
  }

  // Thread-per-vertex: lane i of the warp owns the i-th vertex of the group
  // and all lanes step through their lists together.
  std::array<std::uint64_t, kWarpSize> start{};
  std::array<std::uint64_t, kWarpSize> len{};
  for (std::uint64_t group = 0; group < count; group += kWarpSize) {
    const auto lanes = static_cast<std::uint32_t>(std::min<std::uint64_t>(kWarpSize, count - group));
    std::uint64_t steps = 0;
    for (std::uint32_t lane = 0; lane < lanes; ++lane) {
      const vertex_t v = vertex_at(group + lane);
      start[lane] = g.offsets[v];
      len[lane] = g.degree(v);
      steps = std::max(steps, len[lane]);
    }
    for (std::uint64_t k = 0; k < steps; ++k) {
      WarpAccess wa;
      wa.region = Region::Edges;
      wa.elem_bytes = eb;
      for (std::uint32_t lane = 0; lane < lanes; ++lane)
        if (k < len[lane]) wa.set(lane, base + (start[lane] + k) * eb);
      sink(wa);
    }
  }
}

}  // namespace

std::string_view to_string(AccessStrategy s) {
  switch (s) {
    case AccessStrategy::Naive: return "naive";
    case AccessStrategy::Merged: return "merged";
    case AccessStrategy::MergedAligned: return "merged-aligned";
  }
  return "?";
}

std::string_view to_string(Region r) { return r == Region::Edges ? "edges" : "weights"; }

AccessStrategy parse_strategy(std::string_view name) {
  for (AccessStrategy s : kAllStrategies)
    if (to_string(s) == name) return s;
  throw ParameterError("unknown strategy '" + std::string(name) + "'");
}

AddressLayout default_layout(const CsrGraph& g) {
  constexpr std::uint64_t kPage = 4096;
  return {0, (g.edge_bytes() + kPage - 1) / kPage * kPage};
}

void emit_list_accesses(AccessStrategy strategy, std::uint64_t list_start_elem,
                        std::uint64_t list_end_elem, std::uint32_t elem_bytes,
                        std::uint64_t region_base_addr, Region region, const AccessSink& sink) {
  if (list_start_elem > list_end_elem) throw ParameterError("list start is past its end");
  check_region(elem_bytes, region_base_addr);

  switch (strategy) {
    case AccessStrategy::Naive:
      for (std::uint64_t i = list_start_elem; i < list_end_elem; ++i) {
        WarpAccess wa;
        wa.region = region;
        wa.elem_bytes = elem_bytes;
        wa.set(0, region_base_addr + i * elem_bytes);
        sink(wa);
      }
      break;
    case AccessStrategy::Merged:
      for (std::uint64_t i = list_start_elem; i < list_end_elem; i += kWarpSize)
        emit_one_warp(i, list_start_elem, list_end_elem, elem_bytes, region_base_addr, region, sink);
      break;
    case AccessStrategy::MergedAligned: {
      // Round the start index down to a 128-byte line; lanes before the real
      // start are masked off.
      const std::uint64_t elems_per_line = kLineBytes / elem_bytes;
      const std::uint64_t first = list_start_elem & ~(elems_per_line - 1);
      for (std::uint64_t i = first; i < list_end_elem; i += kWarpSize)
        emit_one_warp(i, list_start_elem, list_end_elem, elem_bytes, region_base_addr, region, sink);
      break;
    }
  }
}

std::vector<WarpAccess> emit_list_accesses(AccessStrategy strategy, std::uint64_t list_start_elem,
                                           std::uint64_t list_end_elem, std::uint32_t elem_bytes,
                                           std::uint64_t region_base_addr, Region region) {
  std::vector<WarpAccess> out;
  emit_list_accesses(strategy, list_start_elem, list_end_elem, elem_bytes, region_base_addr, region,
                     [&](const WarpAccess& wa) { out.push_back(wa); });
  return out;
}

void trace_frontier(const CsrGraph& g, std::span<const vertex_t> active, const TraceOptions& opts,
                    const AccessSink& sink) {
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i] >= g.num_vertices())
      throw ParameterError("active vertex " + std::to_string(active[i]) + " out of range");
    if (i && active[i] <= active[i - 1])
      throw ParameterError("active vertices must be strictly ascending");
  }
  trace_impl(g, active.size(), [&](std::uint64_t i) { return active[i]; }, opts, sink);
}

void trace_all(const CsrGraph& g, const TraceOptions& opts, const AccessSink& sink) {
  trace_impl(g, g.num_vertices(), [](std::uint64_t i) { return i; }, opts, sink);
}

std::vector<WarpAccess> trace_frontier(const CsrGraph& g, std::span<const vertex_t> active,
                                       const TraceOptions& opts) {
  std::vector<WarpAccess> out;
  trace_frontier(g, active, opts, [&](const WarpAccess& wa) { out.push_back(wa); });
  return out;
}

}  // namespace emogi
