#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "emogi/access.hpp"
#include "emogi/apps.hpp"
#include "emogi/coalescer.hpp"
#include "emogi/graph.hpp"
#include "emogi/interconnect.hpp"
#include "emogi/uvm.hpp"

namespace emogi {

enum class Algorithm : std::uint8_t { Bfs, Sssp, Cc, Pr };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

/// Either a file on disk or a seeded generator invocation.
struct GraphSource {
  std::optional<std::filesystem::path> file;
  std::string generator = "powerlaw";  // "uniform" | "powerlaw"
  std::uint64_t vertices = 100000;
  double avg_degree = 71.0;
  std::uint64_t min_degree = 16;
  std::uint64_t max_degree = 48;
  double exponent = 2.0;
  std::uint64_t seed = 3;
  /// Mirror edges after generation (or after loading a text file).
  bool undirected = false;
};

/// Builds the graph described by `src` with the requested edge width.
CsrGraph make_graph(const GraphSource& src, std::uint32_t edge_bytes = 8);
/// Short label used in report rows.
std::string graph_label(const GraphSource& src);

struct ExperimentConfig {
  GraphSource graph;
  Algorithm algo = Algorithm::Bfs;
  std::vector<AccessStrategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  std::uint32_t edge_bytes = 8;
  std::uint32_t weight_bytes = 8;
  LinkModel link;
  UvmConfig uvm{4096, 0, true};  // capacity 0 = uvm_capacity_fraction of the dataset
  double uvm_capacity_fraction = 0.25;
  std::uint64_t sources = 64;
  std::uint64_t source_seed = 7;
  std::uint64_t weight_seed = 11;
  PageRankParams pagerank;
  unsigned jobs = 1;
};

struct RunRecord {
  std::string graph;
  Algorithm algo = Algorithm::Bfs;
  AccessStrategy strategy = AccessStrategy::Naive;
  std::optional<vertex_t> source;
  std::uint64_t iterations = 0;
  std::uint64_t edges_traversed = 0;
  std::uint64_t dataset_bytes = 0;
  TrafficStats traffic;
  TransferEstimate estimate;
  UvmStats uvm;
  double teps_est = 0.0;
  std::uint64_t checksum = 0;
};

/// Per-strategy aggregate over all sources of one experiment.
struct StrategySummary {
  AccessStrategy strategy = AccessStrategy::Naive;
  std::uint64_t runs = 0;
  TrafficStats traffic;  // summed
  double mean_requests = 0.0;
  double mean_zerocopy_amp = 0.0;
  double mean_uvm_amp = 0.0;
  double mean_est_seconds = 0.0;
  double mean_teps = 0.0;
  double mean_latency_bound = 0.0;
  double mean_efficiency_bound = 0.0;
  double mean_effective_bandwidth = 0.0;
};

struct ExperimentReport {
  std::string graph;
  Algorithm algo = Algorithm::Bfs;
  std::uint64_t num_vertices = 0;
  std::uint64_t num_edges = 0;
  std::uint64_t dataset_bytes = 0;
  std::uint64_t uvm_capacity_bytes = 0;
  DegreeCdf cdf;
  std::vector<RunRecord> runs;  // ordered by (strategy, source position)
  std::vector<StrategySummary> summaries;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);
/// Runs on an already-built graph; `g` must already carry weights for SSSP.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const CsrGraph& g, std::string label);

/// FNV-1a over a traversal's output array, used to compare results across strategies.
std::uint64_t result_checksum(const TraversalResult& r);

// Report emission. Every CSV begins with the line "# emogi-sim v1".

struct HistRow {
  std::string graph;
  std::string algo;
  std::string strategy;
  TrafficStats traffic;
};

void write_runs_csv(const ExperimentReport& report, const std::filesystem::path& path);
void write_hist_csv(const std::vector<HistRow>& rows, const std::filesystem::path& path);
void write_cdf_csv(const std::string& graph, const DegreeCdf& cdf, const std::filesystem::path& path);
std::string summary_json(const ExperimentReport& report);

/// Writes fig5_hist, fig6_cdf, fig7_counts, fig8_bandwidth and fig10_amp CSVs into `dir`.
void emit_figure_data(const ExperimentReport& report, const std::filesystem::path& dir);
/// emit_figure_data plus runs.csv and summary.json.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

// Single-array access patterns: one warp per 128 bytes of a 4-byte array.

enum class MicroPattern : std::uint8_t { Strided, MergedAligned, MergedMisaligned };

std::string_view to_string(MicroPattern p);
MicroPattern parse_micro_pattern(std::string_view name);

struct MicroResult {
  MicroPattern pattern = MicroPattern::Strided;
  std::uint64_t warps = 0;
  TrafficStats first_warp;
  TrafficStats total;
};

/// Replays one pattern over `elements` 4-byte values (multiple of 32*32 for
/// the strided chunking to be even).
MicroResult run_micro(MicroPattern p, std::uint64_t elements = 1024);

}  // namespace emogi
