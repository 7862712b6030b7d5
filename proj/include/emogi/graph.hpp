#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace emogi {

using vertex_t = std::uint64_t;

/// Compressed sparse row graph. `offsets` is the vertex list (always 8-byte
/// values), `edges` the concatenated neighbor lists. Element widths describe
/// the modeled host-memory layout; in memory everything is held as u64.
struct CsrGraph {
  std::vector<std::uint64_t> offsets{0};
  std::vector<vertex_t> edges;
  std::optional<std::vector<std::uint64_t>> weights;
  std::uint32_t edge_elem_bytes = 8;
  std::uint32_t weight_elem_bytes = 8;
  bool directed = true;

  std::uint64_t num_vertices() const { return offsets.size() - 1; }
  std::uint64_t num_edges() const { return edges.size(); }
  std::uint64_t degree(vertex_t v) const { return offsets[v + 1] - offsets[v]; }
  std::span<const vertex_t> neighbors(vertex_t v) const {
    return {edges.data() + offsets[v], static_cast<std::size_t>(degree(v))};
  }
  bool has_weights() const { return weights.has_value(); }

  std::uint64_t edge_bytes() const { return num_edges() * edge_elem_bytes; }
  std::uint64_t weight_bytes() const { return has_weights() ? num_edges() * weight_elem_bytes : 0; }

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;
};

/// Throws InvariantError (or DatatypeError for width violations) if `g` is
/// not a well-formed CSR graph.
void validate(const CsrGraph& g);

/// Builds a CSR graph from an edge list, grouping by source in ascending
/// order and keeping the input order within each list.
CsrGraph from_edge_list(std::uint64_t num_vertices,
                        std::span<const std::pair<vertex_t, vertex_t>> edges,
                        std::span<const std::uint64_t> weights = {},
                        bool directed = true, std::uint32_t edge_elem_bytes = 8);

/// Mirrors every edge (u,v) as (v,u), copying its weight. Marks the graph undirected.
CsrGraph symmetrize(const CsrGraph& g);

/// True if some neighbor list contains the same destination twice.
bool has_duplicate_edges(const CsrGraph& g);

struct TextLoadOptions {
  bool directed = true;
  std::uint32_t edge_elem_bytes = 8;
  std::uint32_t weight_elem_bytes = 8;
  std::uint64_t num_vertices_hint = 0;
};

/// Parses "src dst [w]" lines. Lines starting with '#' or '%' are comments.
CsrGraph load_edge_list_text(const std::filesystem::path& path, const TextLoadOptions& opts = {});

void store_csr_binary(const CsrGraph& g, const std::filesystem::path& path);
CsrGraph load_csr_binary(const std::filesystem::path& path);

/// Loads either format, sniffing the binary magic.
CsrGraph load_graph(const std::filesystem::path& path, const TextLoadOptions& text_opts = {});

// Generators. All are pure functions of their arguments.

CsrGraph generate_uniform(std::uint64_t num_vertices, std::uint64_t min_degree,
                          std::uint64_t max_degree, std::uint64_t seed);

CsrGraph generate_powerlaw(std::uint64_t num_vertices, double target_avg_degree, double exponent,
                           std::uint64_t seed);

/// Attaches uniform integer weights in [lo, hi] when the graph has none.
/// Weights are drawn per stored edge, so weight before symmetrize() if both
/// directions of an edge must carry the same value.
void ensure_weights(CsrGraph& g, std::uint64_t seed, std::uint64_t lo = 8, std::uint64_t hi = 72);

struct CdfPoint {
  std::uint64_t degree;
  double cumulative_edge_fraction;
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

/// Fraction of edges owned by vertices of degree <= d, one point per distinct
/// nonzero degree.
using DegreeCdf = std::vector<CdfPoint>;

DegreeCdf degree_cdf(const CsrGraph& g);

/// n distinct vertices with out-degree >= 1, in draw order.
std::vector<vertex_t> pick_sources(const CsrGraph& g, std::uint64_t n, std::uint64_t seed);

}  // namespace emogi
