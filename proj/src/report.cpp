#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "emogi/error.hpp"
#include "emogi/experiment.hpp"

namespace emogi {

namespace {

constexpr const char* kCsvVersionLine = "# emogi-sim v1\n";
constexpr std::array<std::uint32_t, 4> kSizes = {32, 64, 96, 128};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string pct(const TrafficStats& t, std::uint32_t size) { return num(100.0 * t.fraction(size)); }

double gibs(double bytes_per_sec) { return bytes_per_sec / kGiB; }

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& header) : out_(path, std::ios::trunc) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
    out_ << kCsvVersionLine << header << '\n';
  }
  ~CsvFile() noexcept(false) {
    out_.flush();
    if (!out_ && std::uncaught_exceptions() == 0) throw Error("write failed");
  }
  std::ofstream& out() { return out_; }

 private:
  std::ofstream out_;
};

const StrategySummary* find_summary(const ExperimentReport& r, AccessStrategy s) {
  for (const auto& sum : r.summaries)
    if (sum.strategy == s) return &sum;
  return nullptr;
}

}  // namespace

void write_hist_csv(const std::vector<HistRow>& rows, const std::filesystem::path& path) {
  CsvFile csv(path, "graph,algo,strategy,pct_32,pct_64,pct_96,pct_128,requests_total");
  for (const HistRow& r : rows) {
    csv.out() << r.graph << ',' << r.algo << ',' << r.strategy;
    for (std::uint32_t size : kSizes) csv.out() << ',' << pct(r.traffic, size);
    csv.out() << ',' << r.traffic.request_count << '\n';
  }
}

void write_cdf_csv(const std::string& graph, const DegreeCdf& cdf, const std::filesystem::path& path) {
  CsvFile csv(path, "graph,degree,cumulative_edge_fraction");
  for (const CdfPoint& p : cdf)
    csv.out() << graph << ',' << p.degree << ',' << num(p.cumulative_edge_fraction) << '\n';
}

void write_runs_csv(const ExperimentReport& report, const std::filesystem::path& path) {
  CsvFile csv(path,
              "graph,algo,strategy,source,iterations,edges_traversed,requests_total,req_32,req_64,"
              "req_96,req_128,payload_bytes,dram_bytes,zerocopy_amp,uvm_faults,uvm_pages_migrated,"
              "uvm_pages_evicted,uvm_bytes_migrated,uvm_amp,latency_bound_gibs,"
              "efficiency_bound_gibs,effective_gibs,est_seconds,teps_est,levels_checksum");
  for (const RunRecord& r : report.runs) {
    auto& o = csv.out();
    o << r.graph << ',' << to_string(r.algo) << ',' << to_string(r.strategy) << ',';
    if (r.source) o << *r.source;
    o << ',' << r.iterations << ',' << r.edges_traversed << ',' << r.traffic.request_count;
    for (std::uint32_t size : kSizes) o << ',' << r.traffic.count_of(size);
    o << ',' << r.traffic.payload_bytes << ',' << r.traffic.dram_bytes << ','
      << num(r.traffic.amplification) << ',' << r.uvm.faults << ',' << r.uvm.pages_migrated << ','
      << r.uvm.pages_evicted << ',' << r.uvm.bytes_migrated << ',' << num(r.uvm.amplification) << ','
      << num(gibs(r.estimate.latency_bound)) << ',' << num(gibs(r.estimate.efficiency_bound)) << ','
      << num(gibs(r.estimate.effective_bandwidth)) << ',' << num(r.estimate.est_seconds) << ','
      << num(r.teps_est) << ',' << r.checksum << '\n';
  }
}

std::string summary_json(const ExperimentReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "emogi-sim v1";
  j["graph"] = report.graph;
  j["algo"] = to_string(report.algo);
  j["num_vertices"] = report.num_vertices;
  j["num_edges"] = report.num_edges;
  j["dataset_bytes"] = report.dataset_bytes;
  j["uvm_capacity_bytes"] = report.uvm_capacity_bytes;
  j["runs"] = report.runs.size();

  const StrategySummary* naive = find_summary(report, AccessStrategy::Naive);
  ordered_json strategies = ordered_json::array();
  for (const StrategySummary& s : report.summaries) {
    ordered_json e;
    e["strategy"] = to_string(s.strategy);
    e["runs"] = s.runs;
    ordered_json hist;
    for (std::uint32_t size : kSizes) hist[std::to_string(size)] = s.traffic.count_of(size);
    e["histogram"] = hist;
    ordered_json frac;
    for (std::uint32_t size : kSizes) frac[std::to_string(size)] = s.traffic.fraction(size);
    e["histogram_fraction"] = frac;
    e["requests_total"] = s.traffic.request_count;
    e["payload_bytes"] = s.traffic.payload_bytes;
    e["dram_bytes"] = s.traffic.dram_bytes;
    if (naive && naive->traffic.request_count)
      e["request_ratio_vs_naive"] = static_cast<double>(s.traffic.request_count) /
                                    static_cast<double>(naive->traffic.request_count);
    e["zerocopy_amplification"] = s.mean_zerocopy_amp;
    e["uvm_amplification"] = s.mean_uvm_amp;
    e["latency_bound_gibs"] = gibs(s.mean_latency_bound);
    e["efficiency_bound_gibs"] = gibs(s.mean_efficiency_bound);
    e["effective_gibs"] = gibs(s.mean_effective_bandwidth);
    e["est_seconds"] = s.mean_est_seconds;
    e["teps_est"] = s.mean_teps;
    strategies.push_back(std::move(e));
  }
  j["strategies"] = std::move(strategies);
  return j.dump(2);
}

void emit_figure_data(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string algo(to_string(report.algo));

  std::vector<HistRow> hist;
  for (const StrategySummary& s : report.summaries)
    hist.push_back({report.graph, algo, std::string(to_string(s.strategy)), s.traffic});
  write_hist_csv(hist, dir / "fig5_hist.csv");

  write_cdf_csv(report.graph, report.cdf, dir / "fig6_cdf.csv");

  const StrategySummary* naive = find_summary(report, AccessStrategy::Naive);
  {
    CsvFile csv(dir / "fig7_counts.csv",
                "graph,algo,strategy,requests_total,requests_per_run,reduction_vs_naive_pct");
    for (const StrategySummary& s : report.summaries) {
      csv.out() << report.graph << ',' << algo << ',' << to_string(s.strategy) << ','
                << s.traffic.request_count << ',' << num(s.mean_requests) << ',';
      if (naive && naive->traffic.request_count)
        csv.out() << num(100.0 * (1.0 - static_cast<double>(s.traffic.request_count) /
                                            static_cast<double>(naive->traffic.request_count)));
      csv.out() << '\n';
    }
  }
  {
    CsvFile csv(dir / "fig8_bandwidth.csv",
                "graph,algo,strategy,latency_bound_gibs,efficiency_bound_gibs,effective_gibs,"
                "est_seconds,teps_est");
    for (const StrategySummary& s : report.summaries)
      csv.out() << report.graph << ',' << algo << ',' << to_string(s.strategy) << ','
                << num(gibs(s.mean_latency_bound)) << ',' << num(gibs(s.mean_efficiency_bound)) << ','
                << num(gibs(s.mean_effective_bandwidth)) << ',' << num(s.mean_est_seconds) << ','
                << num(s.mean_teps) << '\n';
  }
  {
    CsvFile csv(dir / "fig10_amp.csv", "graph,algo,strategy,zerocopy_amp,uvm_amp,uvm_over_zerocopy");
    for (const StrategySummary& s : report.summaries) {
      csv.out() << report.graph << ',' << algo << ',' << to_string(s.strategy) << ','
                << num(s.mean_zerocopy_amp) << ',' << num(s.mean_uvm_amp) << ',';
      if (s.mean_zerocopy_amp > 0) csv.out() << num(s.mean_uvm_amp / s.mean_zerocopy_amp);
      csv.out() << '\n';
    }
  }
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  emit_figure_data(report, dir);
  write_runs_csv(report, dir / "runs.csv");
  std::ofstream js(dir / "summary.json", std::ios::trunc);
  if (!js) throw Error("cannot write summary.json");
  js << summary_json(report) << '\n';
}

}  // namespace emogi
