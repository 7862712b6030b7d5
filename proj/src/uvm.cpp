#include "emogi/uvm.hpp"

#include <bit>

#include "emogi/error.hpp"

namespace emogi {

void UvmConfig::validate() const {
  if (page_bytes == 0 || !std::has_single_bit(page_bytes))
    throw ParameterError("page size must be a power of two");
  if (device_capacity_bytes < page_bytes) throw ParameterError("device capacity is below one page");
}

UvmSimulator::UvmSimulator(const UvmConfig& cfg, std::uint64_t dataset_bytes)
    : cfg_(cfg), dataset_bytes_(dataset_bytes) {
  cfg_.validate();
  capacity_pages_ = cfg_.capacity_pages();
}

void UvmSimulator::touch_page(std::uint64_t page) {
  if (auto it = where_.find(page); it != where_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  ++stats_.faults;
  if (lru_.size() == capacity_pages_) {
    where_.erase(lru_.back());
    lru_.pop_back();
    ++stats_.pages_evicted;
    if (!cfg_.read_mostly) stats_.bytes_written_back += cfg_.page_bytes;
  }
  lru_.push_front(page);
  where_.emplace(page, lru_.begin());
  ++stats_.pages_migrated;
  stats_.bytes_migrated += cfg_.page_bytes;
}

void UvmSimulator::operator()(const WarpAccess& wa) {
  for (std::uint32_t lane = 0; lane < kWarpSize; ++lane) {
    if (!wa.active(lane)) continue;
    const std::uint64_t first = wa.lane_addr[lane] / cfg_.page_bytes;
    const std::uint64_t last = (wa.lane_addr[lane] + wa.elem_bytes - 1) / cfg_.page_bytes;
    for (std::uint64_t p = first; p <= last; ++p) touch_page(p);
  }
}

UvmStats UvmSimulator::stats() const {
  UvmStats s = stats_;
  s.amplification = dataset_bytes_ ? static_cast<double>(s.bytes_migrated) / static_cast<double>(dataset_bytes_) : 0.0;
  return s;
}

UvmStats uvm_replay(std::span<const WarpAccess> trace, const UvmConfig& cfg,
                    std::uint64_t dataset_bytes) {
  UvmSimulator sim(cfg, dataset_bytes);
  for (const WarpAccess& wa : trace) sim(wa);
  return sim.stats();
}

}  // namespace emogi
