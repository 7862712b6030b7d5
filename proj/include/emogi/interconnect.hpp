#pragma once

#include <cstdint>

#include "emogi/coalescer.hpp"

namespace emogi {

inline constexpr double kGiB = 1024.0 * 1024.0 * 1024.0;

/// Static model of a PCIe-like read path from device to host memory.
struct LinkModel {
  double header_bytes = 18.0;  // per-TLP header overhead
  std::uint64_t tag_limit = 256;  // outstanding read requests
  double rtt_seconds = 1.0e-6;
  double peak_bandwidth_bytes_per_sec = 12.3 * kGiB;

  /// Throws ParameterError unless every field is positive.
  void validate() const;

  static LinkModel pcie3() { return {}; }
  static LinkModel pcie4() {
    LinkModel m;
    m.peak_bandwidth_bytes_per_sec = 24.0 * kGiB;
    return m;
  }
};

/// header / (header + payload).
double tlp_overhead_ratio(std::uint64_t payload_bytes, const LinkModel& m);

/// Bandwidth cap from the tag limit: request_bytes * tags / rtt, in bytes/s.
double latency_bound_bandwidth(double request_bytes, const LinkModel& m);

/// Smallest number of outstanding requests that sustains the given bandwidth.
std::uint64_t tags_required(double bandwidth_bytes_per_sec, std::uint64_t request_bytes,
                            const LinkModel& m);

struct TransferEstimate {
  double effective_bandwidth = 0.0;  // payload bytes/s
  double efficiency_bound = 0.0;     // peak * payload / (payload + headers)
  double latency_bound = 0.0;        // at the mean request size
  double est_seconds = 0.0;
};

/// Min-of-bounds estimate of the time the link needs to carry `stats`.
TransferEstimate estimate_transfer(const TrafficStats& stats, const LinkModel& m);

}  // namespace emogi
