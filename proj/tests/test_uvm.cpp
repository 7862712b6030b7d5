#include <doctest.h>

#include <set>

#include "emogi/error.hpp"
#include "emogi/rng.hpp"
#include "emogi/uvm.hpp"

using namespace emogi;

namespace {

/// One warp per 128 bytes, reading `bytes` of a 4-byte array from address 0.
std::vector<WarpAccess> sequential_scan(std::uint64_t bytes) {
  std::vector<WarpAccess> out;
  for (std::uint64_t base = 0; base < bytes; base += 128) {
    WarpAccess wa;
    wa.elem_bytes = 4;
    for (std::uint32_t l = 0; l < kWarpSize && base + 4 * l < bytes; ++l) wa.set(l, base + 4 * l);
    out.push_back(wa);
  }
  return out;
}

UvmConfig config(std::uint64_t capacity_pages, bool read_mostly = true) {
  return UvmConfig{4096, capacity_pages * 4096, read_mostly};
}

}  // namespace

TEST_CASE("sequential scan that fits migrates each page once") {
  const std::uint64_t bytes = 40 * 4096;
  const UvmStats s = uvm_replay(sequential_scan(bytes), config(64), bytes);
  CHECK(s.faults == 40);
  CHECK(s.pages_migrated == 40);
  CHECK(s.pages_evicted == 0);
  CHECK(s.bytes_migrated == bytes);
  CHECK(s.amplification == doctest::Approx(1.0));
}

TEST_CASE("two scans of 2C pages through capacity C thrash under LRU") {
  const std::uint64_t cap = 8;
  const std::uint64_t bytes = 2 * cap * 4096;
  auto trace = sequential_scan(bytes);
  const auto once = trace;
  trace.insert(trace.end(), once.begin(), once.end());
  const UvmStats s = uvm_replay(trace, config(cap), bytes);
  CHECK(s.pages_migrated == 4 * cap);
  CHECK(s.pages_evicted == 4 * cap - cap);
  CHECK(s.bytes_written_back == 0);
  CHECK(s.amplification == doctest::Approx(2.0));
}

TEST_CASE("write-back counted only without read-mostly") {
  const std::uint64_t bytes = 10 * 4096;
  const UvmStats s = uvm_replay(sequential_scan(bytes), config(4, false), bytes);
  CHECK(s.pages_evicted == 6);
  CHECK(s.bytes_written_back == 6 * 4096);
}

TEST_CASE("an element straddling a page boundary touches both pages") {
  UvmSimulator sim(UvmConfig{4096, 4096 * 4, true}, 8192);
  WarpAccess wa;
  wa.elem_bytes = 8;
  wa.set(0, 4092);
  sim(wa);
  CHECK(sim.stats().faults == 2);
  CHECK(sim.resident_pages() == 2);
}

TEST_CASE("recently used pages survive eviction") {
  UvmSimulator sim(config(2), 3 * 4096);
  sim.touch_page(0);
  sim.touch_page(1);
  sim.touch_page(0);  // page 1 is now LRU
  sim.touch_page(2);
  CHECK(sim.stats().faults == 3);
  sim.touch_page(0);
  CHECK(sim.stats().faults == 3);
  sim.touch_page(1);
  CHECK(sim.stats().faults == 4);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(UvmSimulator(UvmConfig{3000, 1 << 20, true}, 1), ParameterError);
  CHECK_THROWS_AS(UvmSimulator(UvmConfig{4096, 100, true}, 1), ParameterError);
  CHECK(UvmSimulator(config(1), 0).stats().amplification == 0.0);
}

TEST_CASE("property: unlimited capacity costs exactly the cold misses") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint64_t> pages(500);
    for (auto& p : pages) p = rng.below(200);
    UvmSimulator sim(config(1000), 1);
    std::set<std::uint64_t> distinct(pages.begin(), pages.end());
    for (auto p : pages) sim.touch_page(p);
    CHECK(sim.stats().faults == distinct.size());
  }
}

TEST_CASE("property: LRU inclusion - more capacity never means more migrations") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::uint64_t> pages(2000);
    // Skewed reuse so that capacity matters.
    for (auto& p : pages) p = rng.below(2) ? rng.below(16) : rng.below(300);
    std::uint64_t prev = UINT64_MAX;
    for (std::uint64_t cap = 1; cap <= 320; cap += 7) {
      UvmSimulator sim(config(cap), 1);
      for (auto p : pages) sim.touch_page(p);
      CHECK(sim.stats().pages_migrated <= prev);
      prev = sim.stats().pages_migrated;
    }
  }
}
