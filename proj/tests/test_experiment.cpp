#include <doctest.h>

#include <fstream>
#include <sstream>

#include "emogi/error.hpp"
#include "emogi/experiment.hpp"

using namespace emogi;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir(const std::string& name) {
  const fs::path p = fs::path(EMOGI_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "# emogi-sim v1");
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig small_powerlaw(Algorithm algo) {
  ExperimentConfig cfg;
  cfg.graph.generator = "powerlaw";
  cfg.graph.vertices = 3000;
  cfg.graph.avg_degree = 24;
  cfg.graph.seed = 9;
  cfg.algo = algo;
  cfg.sources = 4;
  return cfg;
}

}  // namespace

TEST_CASE("triangle BFS: one row per strategy, identical checksums") {
  const CsrGraph tri = from_edge_list(3, std::vector<std::pair<vertex_t, vertex_t>>{{0, 1}, {1, 2}, {0, 2}}, {}, false);
  ExperimentConfig cfg;
  cfg.sources = 1;
  const ExperimentReport rep = run_experiment(cfg, tri, "triangle");
  REQUIRE(rep.runs.size() == 3);
  CHECK(rep.summaries.size() == 3);
  for (const auto& r : rep.runs) {
    CHECK(r.checksum == rep.runs[0].checksum);
    CHECK(r.iterations == 2);
  }
  CHECK(rep.uvm_capacity_bytes == 4096);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  ExperimentConfig cfg = small_powerlaw(Algorithm::Sssp);
  const fs::path a = tmp_dir("det_a"), b = tmp_dir("det_b");
  write_report(run_experiment(cfg), a);
  cfg.jobs = 4;
  write_report(run_experiment(cfg), b);
  for (const char* f : {"fig5_hist.csv", "fig6_cdf.csv", "fig7_counts.csv", "fig8_bandwidth.csv",
                        "fig10_amp.csv", "runs.csv", "summary.json"}) {
    INFO(f);
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("histogram fractions sum to 100% and counts fall with merging") {
  const ExperimentReport rep = run_experiment(small_powerlaw(Algorithm::Bfs));
  const fs::path dir = tmp_dir("hist");
  emit_figure_data(rep, dir);
  const auto rows = csv_rows(dir / "fig5_hist.csv");
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    REQUIRE(r.size() == 8);
    double sum = 0;
    for (int i = 3; i < 7; ++i) sum += std::stod(r[i]);
    CHECK(sum == doctest::Approx(100.0));
  }
  REQUIRE(rep.summaries.size() == 3);
  CHECK(rep.summaries[1].traffic.request_count < rep.summaries[0].traffic.request_count);
  CHECK(rep.summaries[2].traffic.request_count <= rep.summaries[1].traffic.request_count);
  // Naive pays a 32B sector per 8B element, so only the merged strategies beat UVM.
  CHECK(rep.summaries[2].mean_uvm_amp > rep.summaries[2].mean_zerocopy_amp);

  const auto amp = csv_rows(dir / "fig10_amp.csv");
  REQUIRE(amp.size() == 3);
  CHECK(amp[2][2] == "merged-aligned");
  CHECK(std::stod(amp[2][5]) > 1.0);
}

TEST_CASE("uniform degree CDF has no mass below the minimum degree") {
  ExperimentConfig cfg;
  cfg.graph.generator = "uniform";
  cfg.graph.vertices = 2000;
  cfg.algo = Algorithm::Pr;
  cfg.pagerank.max_iters = 3;
  const ExperimentReport rep = run_experiment(cfg);
  const fs::path dir = tmp_dir("cdf");
  emit_figure_data(rep, dir);
  const auto rows = csv_rows(dir / "fig6_cdf.csv");
  REQUIRE_FALSE(rows.empty());
  for (const auto& r : rows) {
    CHECK(std::stoull(r[1]) >= 16);
    CHECK(std::stoull(r[1]) <= 48);
  }
  CHECK(std::stod(rows.back()[2]) == doctest::Approx(1.0));
  CHECK(rep.runs.size() == 3);
  for (const auto& r : rep.runs) CHECK(r.iterations == 3);
}

TEST_CASE("connected components needs --undirected") {
  ExperimentConfig cfg = small_powerlaw(Algorithm::Cc);
  CHECK_THROWS_AS(run_experiment(cfg), ParameterError);
  cfg.graph.undirected = true;
  const ExperimentReport rep = run_experiment(cfg);
  CHECK(rep.runs.size() == 3);
}

TEST_CASE("summary JSON carries the histogram and ratios") {
  const ExperimentReport rep = run_experiment(small_powerlaw(Algorithm::Bfs));
  const std::string js = summary_json(rep);
  CHECK(js.find("\"format\": \"emogi-sim v1\"") != std::string::npos);
  CHECK(js.find("\"request_ratio_vs_naive\"") != std::string::npos);
  CHECK(js.find("\"merged-aligned\"") != std::string::npos);
}

TEST_CASE("micro patterns") {
  const MicroResult strided = run_micro(MicroPattern::Strided);
  CHECK(strided.total.fraction(32) == 1.0);
  CHECK(strided.first_warp.count_of(32) == 32);

  const MicroResult aligned = run_micro(MicroPattern::MergedAligned);
  CHECK(aligned.first_warp.request_count == 1);
  CHECK(aligned.first_warp.count_of(128) == 1);
  CHECK(aligned.total.fraction(128) == 1.0);

  const MicroResult mis = run_micro(MicroPattern::MergedMisaligned);
  CHECK(mis.first_warp.request_count == 2);
  CHECK(mis.first_warp.count_of(32) == 1);
  CHECK(mis.first_warp.count_of(96) == 1);

  CHECK_THROWS_AS(run_micro(MicroPattern::Strided, 33), ParameterError);
  CHECK(parse_micro_pattern("merged-misaligned") == MicroPattern::MergedMisaligned);

  const fs::path dir = tmp_dir("micro");
  write_hist_csv({{"micro", "array-scan", "merged-aligned", aligned.total}}, dir / "fig5_hist.csv");
  const auto rows = csv_rows(dir / "fig5_hist.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][6] == "100");
}

TEST_CASE("graph sources and labels") {
  GraphSource src;
  src.generator = "rmat";
  CHECK_THROWS_AS(make_graph(src), ParameterError);
  src.generator = "uniform";
  src.vertices = 100;
  CHECK(graph_label(src) == "uniform-100-16-48-s3");
  CHECK(make_graph(src, 4).edge_elem_bytes == 4);
  CHECK(parse_algorithm("pr") == Algorithm::Pr);
  CHECK_THROWS_AS(parse_algorithm("tc"), ParameterError);
}
