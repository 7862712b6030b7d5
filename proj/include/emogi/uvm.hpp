#pragma once

#include <cstdint>
#include <list>
#include <span>
#include <unordered_map>

#include "emogi/access.hpp"

namespace emogi {

struct UvmConfig {
  std::uint64_t page_bytes = 4096;
  std::uint64_t device_capacity_bytes = std::uint64_t{16} << 30;
  bool read_mostly = true;

  void validate() const;
  std::uint64_t capacity_pages() const { return device_capacity_bytes / page_bytes; }
};

struct UvmStats {
  std::uint64_t faults = 0;
  std::uint64_t pages_migrated = 0;
  std::uint64_t pages_evicted = 0;
  std::uint64_t bytes_migrated = 0;     // host to device
  std::uint64_t bytes_written_back = 0;  // device to host; zero with read_mostly
  double amplification = 0.0;
};

/// On-demand page migration into a bounded device memory with LRU eviction.
/// Feed it warp accesses in trace order; each touched page that is not
/// resident costs one fault and one page migration.
class UvmSimulator {
 public:
  UvmSimulator(const UvmConfig& cfg, std::uint64_t dataset_bytes);

  void operator()(const WarpAccess& wa);
  void touch_page(std::uint64_t page);

  UvmStats stats() const;
  std::uint64_t resident_pages() const { return lru_.size(); }

 private:
  UvmConfig cfg_;
  std::uint64_t capacity_pages_;
  std::uint64_t dataset_bytes_;
  UvmStats stats_;
  std::list<std::uint64_t> lru_;  // front = most recent
  std::unordered_map<std::uint64_t, std::list<std::uint64_t>::iterator> where_;
};

UvmStats uvm_replay(std::span<const WarpAccess> trace, const UvmConfig& cfg,
                    std::uint64_t dataset_bytes);

}  // namespace emogi
