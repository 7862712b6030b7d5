// emogi-sim: trace-driven model of warp-level zero-copy graph traversal.
//
//   emogi-sim gen     --generator powerlaw --vertices 100000 --out g.bin
//   emogi-sim convert --graph edges.txt --out g.bin
//   emogi-sim stats   --graph g.bin
//   emogi-sim run     --graph g.bin --algo bfs --strategy all --out results/
//   emogi-sim micro   --pattern all
//
// Every subcommand accepts --config FILE with flat key=value lines named
// after the long flags; flags given on the command line win.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "emogi/error.hpp"
#include "emogi/experiment.hpp"

namespace fs = std::filesystem;
using namespace emogi;

namespace {

struct GraphFlags {
  std::string graph;
  GraphSource src;
  std::uint32_t edge_bytes = 8;

  void add_to(CLI::App& app) {
    app.add_option("--graph", graph, "Input graph (binary CSR or text edge list)");
    app.add_option("--generator", src.generator, "Synthetic generator")
        ->check(CLI::IsMember({"uniform", "powerlaw"}));
    app.add_option("--vertices", src.vertices, "Vertex count for generators");
    app.add_option("--avg-degree", src.avg_degree, "Target mean degree (powerlaw)");
    app.add_option("--min-degree", src.min_degree, "Minimum degree (uniform)");
    app.add_option("--max-degree", src.max_degree, "Maximum degree (uniform)");
    app.add_option("--exponent", src.exponent, "Power-law exponent");
    app.add_option("--seed", src.seed, "Generator seed");
    app.add_flag("--undirected", src.undirected, "Mirror every edge");
    app.add_option("--edge-bytes", edge_bytes, "Edge element width")->check(CLI::IsMember({4, 8}));
  }

  GraphSource resolved() const {
    GraphSource s = src;
    if (!graph.empty()) s.file = graph;
    return s;
  }
};

void print_micro(const MicroResult& m) {
  const auto& t = m.total;
  std::printf("%-18s warps=%-5llu requests=%-6llu 32B=%5.1f%% 64B=%5.1f%% 96B=%5.1f%% 128B=%5.1f%%  first warp:",
              std::string(to_string(m.pattern)).c_str(), static_cast<unsigned long long>(m.warps),
              static_cast<unsigned long long>(t.request_count), 100 * t.fraction(32),
              100 * t.fraction(64), 100 * t.fraction(96), 100 * t.fraction(128));
  for (std::uint32_t size : {32u, 64u, 96u, 128u})
    if (m.first_warp.count_of(size))
      std::printf(" %llux%uB", static_cast<unsigned long long>(m.first_warp.count_of(size)), size);
  std::printf("\n");
}

// Splices a flat key=value config file into the argument list as --key=value
// for every key the command line does not already set. Blank lines and
// lines starting with '#' are ignored.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  auto trim = [](std::string x) {
    const auto b = x.find_first_not_of(" \t\r");
    const auto e = x.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : x.substr(b, e - b + 1);
  };
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ": expected key=value", lineno);
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ParseError(path + ": empty key", lineno);
    const std::string flag = "--" + key;
    if (!given(flag)) args.push_back(flag + "=" + value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-copy graph traversal traffic simulator"};
  std::string config_path;  // consumed by expand_config before parsing
  app.require_subcommand(1);

  // gen
  GraphFlags gen_flags;
  std::string gen_out;
  bool gen_weights = false;
  std::uint64_t gen_weight_seed = 11;
  std::uint32_t gen_weight_bytes = 8;
  auto* gen = app.add_subcommand("gen", "Write a synthetic graph as binary CSR");
  gen->add_option("--config", config_path, "Flat key=value file; command-line flags win");
  gen_flags.add_to(*gen);
  gen->add_option("--out", gen_out, "Output file")->required();
  gen->add_flag("--weights", gen_weights, "Attach random weights in [8, 72]");
  gen->add_option("--weight-seed", gen_weight_seed, "Weight seed");
  gen->add_option("--weight-bytes", gen_weight_bytes, "Weight element width")->check(CLI::IsMember({4, 8}));

  // convert
  std::string conv_in, conv_out;
  bool conv_undirected = false;
  std::uint32_t conv_edge_bytes = 8, conv_weight_bytes = 8;
  auto* convert = app.add_subcommand("convert", "Convert a text edge list to binary CSR");
  convert->add_option("--config", config_path, "Flat key=value file; command-line flags win");
  convert->add_option("--graph", conv_in, "Text edge list")->required();
  convert->add_option("--out", conv_out, "Output file")->required();
  convert->add_flag("--undirected", conv_undirected, "Materialize both directions");
  convert->add_option("--edge-bytes", conv_edge_bytes, "Edge element width")->check(CLI::IsMember({4, 8}));
  convert->add_option("--weight-bytes", conv_weight_bytes, "Weight element width")->check(CLI::IsMember({4, 8}));

  // stats
  GraphFlags stats_flags;
  std::string stats_out;
  bool stats_json = false;
  auto* stats = app.add_subcommand("stats", "Degree statistics and edge-count CDF");
  stats->add_option("--config", config_path, "Flat key=value file; command-line flags win");
  stats_flags.add_to(*stats);
  stats->add_option("--out", stats_out, "Directory for fig6_cdf.csv (default: CSV to stdout)");
  stats->add_flag("--json", stats_json, "Print a JSON summary instead of CSV");

  // run
  GraphFlags run_flags;
  ExperimentConfig cfg;
  std::string algo = "bfs", strategy = "all", run_out = "results";
  double rtt_us = cfg.link.rtt_seconds * 1e6;
  double peak_gibs = cfg.link.peak_bandwidth_bytes_per_sec / kGiB;
  bool run_json = false;
  auto* run = app.add_subcommand("run", "Run a traversal experiment and write report files");
  run->add_option("--config", config_path, "Flat key=value file; command-line flags win");
  run_flags.add_to(*run);
  run->add_option("--algo", algo, "Application")->check(CLI::IsMember({"bfs", "sssp", "cc", "pr"}));
  run->add_option("--strategy", strategy, "Access strategy")
      ->check(CLI::IsMember({"naive", "merged", "merged-aligned", "all"}));
  run->add_option("--weight-bytes", cfg.weight_bytes, "Weight element width")->check(CLI::IsMember({4, 8}));
  run->add_option("--sources", cfg.sources, "Random sources for BFS/SSSP");
  run->add_option("--source-seed", cfg.source_seed, "Source selection seed");
  run->add_option("--weight-seed", cfg.weight_seed, "Weight seed when the graph has none");
  run->add_option("--rtt-us", rtt_us, "Link round-trip time in microseconds");
  run->add_option("--tags", cfg.link.tag_limit, "Outstanding request limit");
  run->add_option("--header-bytes", cfg.link.header_bytes, "Per-request header bytes");
  run->add_option("--peak-gibs", peak_gibs, "Peak link bandwidth in GiB/s");
  run->add_option("--uvm-capacity-bytes", cfg.uvm.device_capacity_bytes,
                  "Device memory for the UVM model (0 = 25% of the dataset)");
  run->add_option("--page-bytes", cfg.uvm.page_bytes, "UVM migration granularity");
  run->add_option("--damping", cfg.pagerank.damping, "PageRank damping");
  run->add_option("--max-iters", cfg.pagerank.max_iters, "PageRank iteration cap");
  run->add_option("--tol", cfg.pagerank.tol, "PageRank L1 tolerance");
  run->add_option("--jobs", cfg.jobs, "Parallel runs");
  run->add_option("--out", run_out, "Output directory");
  run->add_flag("--json", run_json, "Print the JSON summary to stdout");

  // micro
  std::string pattern = "all", micro_out;
  std::uint64_t micro_elements = 1024;
  bool micro_json = false;
  auto* micro = app.add_subcommand("micro", "Replay the single-array warp access patterns");
  micro->add_option("--config", config_path, "Flat key=value file; command-line flags win");
  micro->add_option("--pattern", pattern, "Pattern")
      ->check(CLI::IsMember({"strided", "merged-aligned", "merged-misaligned", "all"}));
  micro->add_option("--elements", micro_elements, "Array length in 4-byte elements");
  micro->add_option("--out", micro_out, "Directory for fig5_hist.csv");
  micro->add_flag("--json", micro_json, "Print JSON instead of a table");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::vector<char*> cargs;
  for (std::string& a : args) cargs.push_back(a.data());
  CLI11_PARSE(app, static_cast<int>(cargs.size()), cargs.data());

  try {
    if (*gen) {
      CsrGraph g = make_graph(gen_flags.resolved(), gen_flags.edge_bytes);
      if (gen_weights) {
        g.weight_elem_bytes = gen_weight_bytes;
        ensure_weights(g, gen_weight_seed);
      }
      store_csr_binary(g, gen_out);
      std::cerr << "wrote " << gen_out << ": V=" << g.num_vertices() << " E=" << g.num_edges() << '\n';
    } else if (*convert) {
      TextLoadOptions opts;
      opts.directed = !conv_undirected;
      opts.edge_elem_bytes = conv_edge_bytes;
      opts.weight_elem_bytes = conv_weight_bytes;
      const CsrGraph g = load_edge_list_text(conv_in, opts);
      store_csr_binary(g, conv_out);
      std::cerr << "wrote " << conv_out << ": V=" << g.num_vertices() << " E=" << g.num_edges() << '\n';
    } else if (*stats) {
      const GraphSource src = stats_flags.resolved();
      const CsrGraph g = make_graph(src, stats_flags.edge_bytes);
      const DegreeCdf cdf = degree_cdf(g);
      std::uint64_t max_deg = 0;
      for (vertex_t v = 0; v < g.num_vertices(); ++v) max_deg = std::max(max_deg, g.degree(v));
      const double mean = g.num_vertices() ? static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices()) : 0.0;
      if (stats_json) {
        nlohmann::ordered_json j;
        j["graph"] = graph_label(src);
        j["num_vertices"] = g.num_vertices();
        j["num_edges"] = g.num_edges();
        j["mean_degree"] = mean;
        j["max_degree"] = max_deg;
        j["cdf_points"] = cdf.size();
        std::cout << j.dump(2) << '\n';
      } else if (!stats_out.empty()) {
        fs::create_directories(stats_out);
        write_cdf_csv(graph_label(src), cdf, fs::path(stats_out) / "fig6_cdf.csv");
      } else {
        std::cout << "# emogi-sim v1\ndegree,cumulative_edge_fraction\n";
        for (const CdfPoint& p : cdf) std::cout << p.degree << ',' << p.cumulative_edge_fraction << '\n';
      }
      if (!stats_json)
        std::cerr << "V=" << g.num_vertices() << " E=" << g.num_edges() << " mean_degree=" << mean
                  << " max_degree=" << max_deg << '\n';
    } else if (*run) {
      cfg.graph = run_flags.resolved();
      cfg.edge_bytes = run_flags.edge_bytes;
      cfg.algo = parse_algorithm(algo);
      if (strategy != "all") cfg.strategies = {parse_strategy(strategy)};
      cfg.link.rtt_seconds = rtt_us * 1e-6;
      cfg.link.peak_bandwidth_bytes_per_sec = peak_gibs * kGiB;
      const ExperimentReport report = run_experiment(cfg);
      write_report(report, run_out);
      if (run_json) std::cout << summary_json(report) << '\n';
      std::cerr << "wrote " << report.runs.size() << " runs to " << run_out << '\n';
    } else if (*micro) {
      std::vector<MicroPattern> patterns;
      if (pattern == "all")
        patterns = {MicroPattern::Strided, MicroPattern::MergedAligned, MicroPattern::MergedMisaligned};
      else
        patterns = {parse_micro_pattern(pattern)};
      std::vector<HistRow> rows;
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (MicroPattern p : patterns) {
        const MicroResult m = run_micro(p, micro_elements);
        rows.push_back({"micro", "array-scan", std::string(to_string(p)), m.total});
        if (micro_json) {
          nlohmann::ordered_json e;
          e["pattern"] = to_string(p);
          e["warps"] = m.warps;
          e["requests_total"] = m.total.request_count;
          for (std::uint32_t size : {32u, 64u, 96u, 128u}) {
            e["total_" + std::to_string(size)] = m.total.count_of(size);
            e["first_warp_" + std::to_string(size)] = m.first_warp.count_of(size);
          }
          j.push_back(std::move(e));
        } else {
          print_micro(m);
        }
      }
      if (micro_json) std::cout << j.dump(2) << '\n';
      if (!micro_out.empty()) {
        fs::create_directories(micro_out);
        write_hist_csv(rows, fs::path(micro_out) / "fig5_hist.csv");
      }
    }
  } catch (const emogi::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
