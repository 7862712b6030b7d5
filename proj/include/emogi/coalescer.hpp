#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "emogi/access.hpp"

namespace emogi {

inline constexpr std::uint64_t kSectorsPerLine = kLineBytes / kSectorBytes;
inline constexpr std::uint64_t kDramBurstBytes = 64;

/// One interconnect read: a run of 1..4 sectors inside one 128-byte line.
struct MemoryRequest {
  std::uint64_t base_addr = 0;
  std::uint32_t size_bytes = 0;
  Region region = Region::Edges;

  friend bool operator==(const MemoryRequest&, const MemoryRequest&) = default;
};

/// Request-size histogram and byte totals for a stretch of traffic.
struct TrafficStats {
  std::array<std::uint64_t, 4> hist{};  // index = size/32 - 1
  std::uint64_t request_count = 0;
  std::uint64_t payload_bytes = 0;
  std::uint64_t dram_bytes = 0;
  double amplification = 0.0;

  void add(const MemoryRequest& r);
  TrafficStats& operator+=(const TrafficStats& other);

  std::uint64_t count_of(std::uint32_t size_bytes) const { return hist[size_bytes / kSectorBytes - 1]; }
  /// Share of requests of the given size; 0 for empty stats.
  double fraction(std::uint32_t size_bytes) const;
  /// Sets amplification = payload / dataset_bytes (0 if dataset_bytes is 0).
  void set_dataset_bytes(std::uint64_t dataset_bytes);

  friend bool operator==(const TrafficStats&, const TrafficStats&) = default;
};

/// Splits one warp access into the sector-run requests the coalescing unit
/// issues, ordered by address. No allocation; returns the count written.
/// `out` must hold 2 * 32 entries.
std::size_t coalesce_into(const WarpAccess& wa, std::span<MemoryRequest, 2 * kWarpSize> out);

std::vector<MemoryRequest> coalesce(const WarpAccess& wa);

TrafficStats coalesce_trace(std::span<const WarpAccess> trace);

/// Running coalescer that can be fed from an AccessSink.
class TrafficCounter {
 public:
  void operator()(const WarpAccess& wa);
  const TrafficStats& stats() const { return stats_; }
  void reset() { stats_ = {}; }

 private:
  TrafficStats stats_;
};

}  // namespace emogi
