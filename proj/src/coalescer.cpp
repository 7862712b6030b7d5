#include "emogi/coalescer.hpp"

#include <algorithm>

namespace emogi {

void TrafficStats::add(const MemoryRequest& r) {
  ++hist[r.size_bytes / kSectorBytes - 1];
  ++request_count;
  payload_bytes += r.size_bytes;
  dram_bytes += (r.size_bytes + kDramBurstBytes - 1) / kDramBurstBytes * kDramBurstBytes;
}

TrafficStats& TrafficStats::operator+=(const TrafficStats& other) {
  for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += other.hist[i];
  request_count += other.request_count;
  payload_bytes += other.payload_bytes;
  dram_bytes += other.dram_bytes;
  return *this;
}

double TrafficStats::fraction(std::uint32_t size_bytes) const {
  if (request_count == 0) return 0.0;
  return static_cast<double>(count_of(size_bytes)) / static_cast<double>(request_count);
}

void TrafficStats::set_dataset_bytes(std::uint64_t dataset_bytes) {
  amplification = dataset_bytes ? static_cast<double>(payload_bytes) / static_cast<double>(dataset_bytes) : 0.0;
}

std::size_t coalesce_into(const WarpAccess& wa, std::span<MemoryRequest, 2 * kWarpSize> out) {
  // An element of at most 8 bytes, aligned to its size, touches at most two sectors.
  std::array<std::uint64_t, 2 * kWarpSize> sectors;
  std::size_t n = 0;
  for (std::uint32_t lane = 0; lane < kWarpSize; ++lane) {
    if (!wa.active(lane)) continue;
    const std::uint64_t first = wa.lane_addr[lane] / kSectorBytes;
    const std::uint64_t last = (wa.lane_addr[lane] + wa.elem_bytes - 1) / kSectorBytes;
    sectors[n++] = first;
    if (last != first) sectors[n++] = last;
  }
  std::sort(sectors.begin(), sectors.begin() + n);
  n = static_cast<std::size_t>(std::unique(sectors.begin(), sectors.begin() + n) - sectors.begin());

  std::size_t emitted = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && sectors[j] == sectors[j - 1] + 1 &&
           sectors[j] / kSectorsPerLine == sectors[i] / kSectorsPerLine)
      ++j;
    out[emitted++] = {sectors[i] * kSectorBytes, static_cast<std::uint32_t>((j - i) * kSectorBytes),
                      wa.region};
    i = j;
  }
  return emitted;
}

std::vector<MemoryRequest> coalesce(const WarpAccess& wa) {
  std::array<MemoryRequest, 2 * kWarpSize> buf;
  const std::size_t n = coalesce_into(wa, buf);
  return {buf.begin(), buf.begin() + n};
}

void TrafficCounter::operator()(const WarpAccess& wa) {
  std::array<MemoryRequest, 2 * kWarpSize> buf;
  const std::size_t n = coalesce_into(wa, buf);
  for (std::size_t i = 0; i < n; ++i) stats_.add(buf[i]);
}

TrafficStats coalesce_trace(std::span<const WarpAccess> trace) {
  TrafficCounter counter;
  for (const WarpAccess& wa : trace) counter(wa);
  return counter.stats();
}

}  // namespace emogi
