#include "emogi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <sstream>
#include <thread>

#include "emogi/error.hpp"

namespace emogi {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Bfs: return "bfs";
    case Algorithm::Sssp: return "sssp";
    case Algorithm::Cc: return "cc";
    case Algorithm::Pr: return "pr";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::Bfs, Algorithm::Sssp, Algorithm::Cc, Algorithm::Pr})
    if (to_string(a) == name) return a;
  throw ParameterError("unknown algorithm '" + std::string(name) + "'");
}

CsrGraph make_graph(const GraphSource& src, std::uint32_t edge_bytes) {
  CsrGraph g;
  if (src.file) {
    TextLoadOptions opts;
    opts.directed = !src.undirected;
    opts.edge_elem_bytes = edge_bytes;
    g = load_graph(*src.file, opts);
    if (src.undirected && g.directed) g = symmetrize(g);
  } else {
    if (src.generator == "uniform")
      g = generate_uniform(src.vertices, src.min_degree, src.max_degree, src.seed);
    else if (src.generator == "powerlaw")
      g = generate_powerlaw(src.vertices, src.avg_degree, src.exponent, src.seed);
    else
      throw ParameterError("unknown generator '" + src.generator + "'");
    if (src.undirected) g = symmetrize(g);
  }
  g.edge_elem_bytes = edge_bytes;
  validate(g);
  return g;
}

std::string graph_label(const GraphSource& src) {
  if (src.file) return src.file->stem().string();
  std::ostringstream os;
  if (src.generator == "uniform")
    os << "uniform-" << src.vertices << "-" << src.min_degree << "-" << src.max_degree;
  else
    os << "powerlaw-" << src.vertices << "-" << src.avg_degree << "-" << src.exponent;
  os << "-s" << src.seed;
  if (src.undirected) os << "-u";
  return os.str();
}

std::uint64_t result_checksum(const TraversalResult& r) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xFF;
      h *= 0x100000001b3ull;
    }
  };
  for (std::uint64_t v : r.values) mix(v);
  for (double x : r.ranks) mix(std::bit_cast<std::uint64_t>(x));
  return h;
}

namespace {

struct RunKey {
  AccessStrategy strategy;
  std::optional<vertex_t> source;
};

RunRecord execute(const ExperimentConfig& cfg, const CsrGraph& g, const std::string& label,
                  const RunKey& key, std::uint64_t dataset_bytes, const UvmConfig& uvm_cfg) {
  UvmSimulator uvm(uvm_cfg, dataset_bytes);
  TraversalOptions opts;
  opts.strategy = key.strategy;
  opts.observer = [&uvm](const WarpAccess& wa) { uvm(wa); };

  TraversalResult result;
  switch (cfg.algo) {
    case Algorithm::Bfs: result = bfs(g, *key.source, opts); break;
    case Algorithm::Sssp: result = sssp(g, *key.source, opts); break;
    case Algorithm::Cc: result = cc(g, opts); break;
    case Algorithm::Pr: result = pagerank(g, cfg.pagerank, opts); break;
  }

  RunRecord rec;
  rec.graph = label;
  rec.algo = cfg.algo;
  rec.strategy = key.strategy;
  rec.source = key.source;
  rec.iterations = result.iterations;
  rec.edges_traversed = result.edges_traversed;
  rec.dataset_bytes = dataset_bytes;
  rec.traffic = result.total_traffic();
  rec.traffic.set_dataset_bytes(dataset_bytes);
  if (rec.traffic.request_count) {
    rec.estimate = estimate_transfer(rec.traffic, cfg.link);
    rec.teps_est = static_cast<double>(rec.edges_traversed) / rec.estimate.est_seconds;
  }
  rec.uvm = uvm.stats();
  rec.checksum = result_checksum(result);
  return rec;
}

std::vector<StrategySummary> summarize(const std::vector<RunRecord>& runs,
                                       const std::vector<AccessStrategy>& strategies) {
  std::vector<StrategySummary> out;
  for (AccessStrategy s : strategies) {
    StrategySummary sum;
    sum.strategy = s;
    for (const RunRecord& r : runs) {
      if (r.strategy != s) continue;
      ++sum.runs;
      sum.traffic += r.traffic;
      sum.mean_requests += static_cast<double>(r.traffic.request_count);
      sum.mean_zerocopy_amp += r.traffic.amplification;
      sum.mean_uvm_amp += r.uvm.amplification;
      sum.mean_est_seconds += r.estimate.est_seconds;
      sum.mean_teps += r.teps_est;
      sum.mean_latency_bound += r.estimate.latency_bound;
      sum.mean_efficiency_bound += r.estimate.efficiency_bound;
      sum.mean_effective_bandwidth += r.estimate.effective_bandwidth;
    }
    if (sum.runs) {
      const double n = static_cast<double>(sum.runs);
      for (double* x : {&sum.mean_requests, &sum.mean_zerocopy_amp, &sum.mean_uvm_amp,
                        &sum.mean_est_seconds, &sum.mean_teps, &sum.mean_latency_bound,
                        &sum.mean_efficiency_bound, &sum.mean_effective_bandwidth})
        *x /= n;
      sum.traffic.amplification = sum.mean_zerocopy_amp;
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  CsrGraph g = make_graph(cfg.graph, cfg.edge_bytes);
  if (cfg.algo == Algorithm::Sssp) {
    g.weight_elem_bytes = cfg.weight_bytes;
    ensure_weights(g, cfg.weight_seed);
  }
  return run_experiment(cfg, g, graph_label(cfg.graph));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const CsrGraph& g, std::string label) {
  cfg.link.validate();
  if (cfg.strategies.empty()) throw ParameterError("no strategies selected");
  if (cfg.algo == Algorithm::Sssp && !g.has_weights()) throw ParameterError("SSSP requires edge weights");

  ExperimentReport report;
  report.graph = std::move(label);
  report.algo = cfg.algo;
  report.num_vertices = g.num_vertices();
  report.num_edges = g.num_edges();
  report.dataset_bytes = g.edge_bytes() + (cfg.algo == Algorithm::Sssp ? g.weight_bytes() : 0);
  report.cdf = degree_cdf(g);

  UvmConfig uvm_cfg = cfg.uvm;
  if (uvm_cfg.device_capacity_bytes == 0) {
    const auto want = static_cast<std::uint64_t>(cfg.uvm_capacity_fraction *
                                                 static_cast<double>(report.dataset_bytes));
    uvm_cfg.device_capacity_bytes = std::max(uvm_cfg.page_bytes, want / uvm_cfg.page_bytes * uvm_cfg.page_bytes);
  }
  uvm_cfg.validate();
  report.uvm_capacity_bytes = uvm_cfg.device_capacity_bytes;

  std::vector<RunKey> keys;
  if (cfg.algo == Algorithm::Bfs || cfg.algo == Algorithm::Sssp) {
    // Sources with no outgoing edges are excluded up front.
    const auto sources = pick_sources(g, cfg.sources, cfg.source_seed);
    for (AccessStrategy s : cfg.strategies)
      for (vertex_t src : sources) keys.push_back({s, src});
  } else {
    for (AccessStrategy s : cfg.strategies) keys.push_back({s, std::nullopt});
  }

  report.runs.resize(keys.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(keys.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < keys.size() && !failed;) {
      try {
        report.runs[i] = execute(cfg, g, report.graph, keys[i], report.dataset_bytes, uvm_cfg);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  report.summaries = summarize(report.runs, cfg.strategies);
  return report;
}

std::string_view to_string(MicroPattern p) {
  switch (p) {
    case MicroPattern::Strided: return "strided";
    case MicroPattern::MergedAligned: return "merged-aligned";
    case MicroPattern::MergedMisaligned: return "merged-misaligned";
  }
  return "?";
}

MicroPattern parse_micro_pattern(std::string_view name) {
  for (MicroPattern p : {MicroPattern::Strided, MicroPattern::MergedAligned, MicroPattern::MergedMisaligned})
    if (to_string(p) == name) return p;
  throw ParameterError("unknown micro pattern '" + std::string(name) + "'");
}

MicroResult run_micro(MicroPattern p, std::uint64_t elements) {
  constexpr std::uint32_t kElem = 4;
  if (elements == 0 || elements % kWarpSize != 0)
    throw ParameterError("micro array length must be a positive multiple of 32");
  MicroResult res;
  res.pattern = p;
  auto record = [&](const WarpAccess& wa) {
    TrafficCounter c;
    c(wa);
    if (res.warps++ == 0) res.first_warp = c.stats();
    res.total += c.stats();
  };

  WarpAccess wa;
  wa.elem_bytes = kElem;
  if (p == MicroPattern::Strided) {
    // Each thread walks its own contiguous chunk one element at a time.
    const std::uint64_t chunk = elements / kWarpSize;
    for (std::uint64_t k = 0; k < chunk; ++k) {
      wa.active_mask = 0;
      for (std::uint32_t lane = 0; lane < kWarpSize; ++lane) wa.set(lane, (lane * chunk + k) * kElem);
      record(wa);
    }
  } else {
    // Misaligned shifts every warp by one 32-byte sector.
    const std::uint64_t shift = p == MicroPattern::MergedMisaligned ? kSectorBytes / kElem : 0;
    for (std::uint64_t w = 0; w < elements / kWarpSize; ++w) {
      wa.active_mask = 0;
      for (std::uint32_t lane = 0; lane < kWarpSize; ++lane)
        wa.set(lane, (shift + w * kWarpSize + lane) * kElem);
      record(wa);
    }
  }
  return res;
}

}  // namespace emogi
