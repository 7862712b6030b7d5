#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "emogi/graph.hpp"

namespace emogi {

inline constexpr std::uint32_t kWarpSize = 32;
inline constexpr std::uint64_t kSectorBytes = 32;
inline constexpr std::uint64_t kLineBytes = 128;

enum class Region : std::uint8_t { Edges, Weights };

enum class AccessStrategy : std::uint8_t { Naive, Merged, MergedAligned };

inline constexpr std::array kAllStrategies = {AccessStrategy::Naive, AccessStrategy::Merged,
                                              AccessStrategy::MergedAligned};

std::string_view to_string(AccessStrategy s);
std::string_view to_string(Region r);
/// Accepts "naive", "merged", "merged-aligned". Throws ParameterError otherwise.
AccessStrategy parse_strategy(std::string_view name);

/// One warp-wide load instruction: per-lane byte addresses plus an active mask.
struct WarpAccess {
  std::array<std::uint64_t, kWarpSize> lane_addr{};
  std::uint32_t active_mask = 0;
  Region region = Region::Edges;
  std::uint32_t elem_bytes = 8;

  bool active(std::uint32_t lane) const { return (active_mask >> lane) & 1u; }
  std::uint32_t active_lanes() const { return static_cast<std::uint32_t>(std::popcount(active_mask)); }
  void set(std::uint32_t lane, std::uint64_t addr) {
    lane_addr[lane] = addr;
    active_mask |= 1u << lane;
  }

  friend bool operator==(const WarpAccess&, const WarpAccess&) = default;
};

using AccessSink = std::function<void(const WarpAccess&)>;

/// Where the host-resident arrays live in the simulated address space. Both
/// bases must be multiples of 128.
struct AddressLayout {
  std::uint64_t edge_base = 0;
  std::uint64_t weight_base = 0;
};

/// Edge list at 0; weight list at the next 4 KiB boundary after it, so the
/// two regions never share a page.
AddressLayout default_layout(const CsrGraph& g);

/// Accesses one kernel strategy makes to scan the list elements
/// [list_start_elem, list_end_elem) of a region. Naive produces one
/// single-lane access per element (one thread scanning sequentially).
void emit_list_accesses(AccessStrategy strategy, std::uint64_t list_start_elem,
                        std::uint64_t list_end_elem, std::uint32_t elem_bytes,
                        std::uint64_t region_base_addr, Region region, const AccessSink& sink);

std::vector<WarpAccess> emit_list_accesses(AccessStrategy strategy, std::uint64_t list_start_elem,
                                           std::uint64_t list_end_elem, std::uint32_t elem_bytes,
                                           std::uint64_t region_base_addr, Region region);

struct TraceOptions {
  AccessStrategy strategy = AccessStrategy::MergedAligned;
  bool include_weights = false;
  AddressLayout layout{};
};

/// Streams the accesses made while scanning the neighbor lists of `active`
/// (strictly ascending vertex ids). Naive packs 32 consecutive active vertices
/// into one warp that advances in lockstep; the merged strategies give each
/// vertex its own warp. With include_weights every edge access is followed by
/// the matching weight-list access.
void trace_frontier(const CsrGraph& g, std::span<const vertex_t> active, const TraceOptions& opts,
                    const AccessSink& sink);

/// Same as trace_frontier over every vertex.
void trace_all(const CsrGraph& g, const TraceOptions& opts, const AccessSink& sink);

std::vector<WarpAccess> trace_frontier(const CsrGraph& g, std::span<const vertex_t> active,
                                       const TraceOptions& opts);

}  // namespace emogi
