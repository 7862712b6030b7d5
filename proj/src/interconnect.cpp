#include "emogi/interconnect.hpp"

#include <algorithm>
#include <cmath>

#include "emogi/error.hpp"

namespace emogi {

void LinkModel::validate() const {
  if (!(header_bytes >= 0.0)) throw ParameterError("header_bytes must be non-negative");
  if (tag_limit < 1) throw ParameterError("tag_limit must be >= 1");
  if (!(rtt_seconds > 0.0)) throw ParameterError("rtt must be positive");
  if (!(peak_bandwidth_bytes_per_sec > 0.0)) throw ParameterError("peak bandwidth must be positive");
}

double tlp_overhead_ratio(std::uint64_t payload_bytes, const LinkModel& m) {
  if (payload_bytes == 0) throw ParameterError("payload must be positive");
  return m.header_bytes / (m.header_bytes + static_cast<double>(payload_bytes));
}

double latency_bound_bandwidth(double request_bytes, const LinkModel& m) {
  if (!(request_bytes > 0.0)) throw ParameterError("request size must be positive");
  return request_bytes * static_cast<double>(m.tag_limit) / m.rtt_seconds;
}

std::uint64_t tags_required(double bandwidth_bytes_per_sec, std::uint64_t request_bytes,
                            const LinkModel& m) {
  if (request_bytes == 0) throw ParameterError("request size must be positive");
  const double in_flight = bandwidth_bytes_per_sec * m.rtt_seconds;
  return static_cast<std::uint64_t>(std::ceil(in_flight / static_cast<double>(request_bytes)));
}

TransferEstimate estimate_transfer(const TrafficStats& stats, const LinkModel& m) {
  m.validate();
  if (stats.request_count == 0) throw ParameterError("cannot estimate an empty transfer");
  const double payload = static_cast<double>(stats.payload_bytes);
  const double headers = m.header_bytes * static_cast<double>(stats.request_count);
  const double mean_request = payload / static_cast<double>(stats.request_count);

  TransferEstimate est;
  est.efficiency_bound = m.peak_bandwidth_bytes_per_sec * payload / (payload + headers);
  est.latency_bound = latency_bound_bandwidth(mean_request, m);
  est.effective_bandwidth = std::min(est.efficiency_bound, est.latency_bound);
  est.est_seconds = payload / est.effective_bandwidth;
  return est;
}

}  // namespace emogi
