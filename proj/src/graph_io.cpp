#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include "emogi/error.hpp"
#include "emogi/graph.hpp"

namespace emogi {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'G', 'I'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 8 + 8;
constexpr std::uint64_t kPayloadAlign = 128;

enum : std::uint32_t {
  kFlagWeights = 1u << 0,
  kFlagEdge8 = 1u << 1,
  kFlagWeight8 = 1u << 2,
  kFlagUndirected = 1u << 3,
  kKnownFlags = kFlagWeights | kFlagEdge8 | kFlagWeight8 | kFlagUndirected,
};

std::uint64_t align_up(std::uint64_t x, std::uint64_t a) { return (x + a - 1) / a * a; }

std::uint64_t width_limit(std::uint32_t bytes) {
  return bytes == 8 ? UINT64_MAX : (std::uint64_t{1} << (8 * bytes)) - 1;
}

void put_le(std::string& out, std::uint64_t value, std::uint32_t bytes) {
  for (std::uint32_t i = 0; i < bytes; ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(const unsigned char* p, std::uint32_t bytes) {
  std::uint64_t v = 0;
  for (std::uint32_t i = 0; i < bytes; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

std::string_view trim_left(std::string_view s) {
  const auto pos = s.find_first_not_of(" \t\r");
  return pos == std::string_view::npos ? std::string_view{} : s.substr(pos);
}

// Splits on whitespace into at most `max_tokens`; returns the count found,
// or max_tokens + 1 if there are more.
std::size_t tokenize(std::string_view s, std::string_view* tokens, std::size_t max_tokens) {
  std::size_t n = 0;
  while (true) {
    s = trim_left(s);
    if (s.empty()) return n;
    const auto end = s.find_first_of(" \t\r");
    if (n == max_tokens) return n + 1;
    tokens[n++] = s.substr(0, end);
    if (end == std::string_view::npos) return n;
    s.remove_prefix(end);
  }
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw DatatypeError("line " + std::to_string(line) + ": " + what + " '" + std::string(tok) +
                        "' does not fit in 64 bits");
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line);
  return v;
}

}  // namespace

CsrGraph load_edge_list_text(const std::filesystem::path& path, const TextLoadOptions& opts) {
  if (opts.edge_elem_bytes != 4 && opts.edge_elem_bytes != 8)
    throw DatatypeError("edge element width must be 4 or 8 bytes");
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());

  // Largest id whose vertex count still fits the edge element width.
  const std::uint64_t max_id =
      opts.edge_elem_bytes == 4 ? (std::uint64_t{1} << 32) - 1 : UINT64_MAX - 1;
  const std::uint64_t max_weight = width_limit(opts.weight_elem_bytes);

  std::vector<std::pair<vertex_t, vertex_t>> list;
  std::vector<std::uint64_t> weights;
  std::uint64_t num_vertices = opts.num_vertices_hint;
  std::optional<bool> weighted;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim_left(raw);
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;
    std::string_view tok[3];
    const std::size_t n = tokenize(line, tok, 3);
    if (n < 2 || n > 3) throw ParseError("expected 'src dst [weight]'", line_no);
    const bool has_w = n == 3;
    if (weighted && *weighted != has_w)
      throw ParseError("weight column present on some lines but not others", line_no);
    weighted = has_w;

    const vertex_t src = parse_uint(tok[0], line_no, "vertex id");
    const vertex_t dst = parse_uint(tok[1], line_no, "vertex id");
    if (src > max_id || dst > max_id)
      throw DatatypeError("line " + std::to_string(line_no) + ": vertex id exceeds " +
                          std::to_string(opts.edge_elem_bytes) + "-byte edge datatype");
    num_vertices = std::max(num_vertices, std::max(src, dst) + 1);
    list.emplace_back(src, dst);
    if (has_w) {
      const std::uint64_t w = parse_uint(tok[2], line_no, "weight");
      if (w > max_weight)
        throw DatatypeError("line " + std::to_string(line_no) + ": weight exceeds " +
                            std::to_string(opts.weight_elem_bytes) + "-byte datatype");
      weights.push_back(w);
    }
  }

  CsrGraph g = from_edge_list(num_vertices, list, weights, opts.directed, opts.edge_elem_bytes);
  g.weight_elem_bytes = opts.weight_elem_bytes;
  validate(g);
  return g;
}

void store_csr_binary(const CsrGraph& g, const std::filesystem::path& path) {
  validate(g);
  const std::uint64_t ne = g.num_edges();
  const std::uint64_t edge_max = width_limit(g.edge_elem_bytes);
  const std::uint64_t weight_max = width_limit(g.weight_elem_bytes);

  std::uint32_t flags = 0;
  if (g.has_weights()) flags |= kFlagWeights;
  if (g.edge_elem_bytes == 8) flags |= kFlagEdge8;
  if (g.weight_elem_bytes == 8) flags |= kFlagWeight8;
  if (!g.directed) flags |= kFlagUndirected;

  std::string out;
  out.append(kMagic, 4);
  put_le(out, kVersion, 4);
  put_le(out, flags, 4);
  put_le(out, g.num_vertices(), 8);
  put_le(out, ne, 8);
  for (std::uint64_t off : g.offsets) put_le(out, off, 8);

  out.resize(align_up(out.size(), kPayloadAlign), '\0');
  for (vertex_t e : g.edges) {
    if (e > edge_max) throw DatatypeError("edge value exceeds element width");
    put_le(out, e, g.edge_elem_bytes);
  }
  if (g.weights) {
    out.resize(align_up(out.size(), kPayloadAlign), '\0');
    for (std::uint64_t w : *g.weights) {
      if (w > weight_max) throw DatatypeError("weight value exceeds element width");
      put_le(out, w, g.weight_elem_bytes);
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error("write failed for " + path.string());
}

CsrGraph load_csr_binary(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string());
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(f)),
                                       std::istreambuf_iterator<char>());

  if (buf.size() < kHeaderBytes) throw FormatError("truncated header in " + path.string());
  if (std::memcmp(buf.data(), kMagic, 4) != 0) throw FormatError("bad magic in " + path.string());
  const auto version = static_cast<std::uint32_t>(get_le(buf.data() + 4, 4));
  if (version != kVersion) throw FormatError("unsupported version " + std::to_string(version));
  const auto flags = static_cast<std::uint32_t>(get_le(buf.data() + 8, 4));
  if (flags & ~kKnownFlags) throw FormatError("unknown flag bits set");
  const std::uint64_t nv = get_le(buf.data() + 12, 8);
  const std::uint64_t ne = get_le(buf.data() + 20, 8);

  CsrGraph g;
  g.edge_elem_bytes = (flags & kFlagEdge8) ? 8 : 4;
  g.weight_elem_bytes = (flags & kFlagWeight8) ? 8 : 4;
  g.directed = !(flags & kFlagUndirected);

  // Size checks before any allocation; guard the multiplications too.
  const std::uint64_t size = buf.size();
  auto need = [&](std::uint64_t pos, std::uint64_t count, std::uint64_t width) {
    if (count > (size - std::min(size, pos)) / width)
      throw FormatError("truncated payload in " + path.string());
    return pos + count * width;
  };
  std::uint64_t pos = kHeaderBytes;
  if (nv == UINT64_MAX) throw FormatError("vertex count overflows");
  const std::uint64_t offsets_end = need(pos, nv + 1, 8);
  const std::uint64_t edges_begin = align_up(offsets_end, kPayloadAlign);
  const std::uint64_t edges_end = need(edges_begin, ne, g.edge_elem_bytes);

  g.offsets.resize(nv + 1);
  for (std::uint64_t i = 0; i <= nv; ++i) g.offsets[i] = get_le(buf.data() + pos + 8 * i, 8);
  g.edges.resize(ne);
  for (std::uint64_t i = 0; i < ne; ++i)
    g.edges[i] = get_le(buf.data() + edges_begin + i * g.edge_elem_bytes, g.edge_elem_bytes);

  if (flags & kFlagWeights) {
    const std::uint64_t weights_begin = align_up(edges_end, kPayloadAlign);
    need(weights_begin, ne, g.weight_elem_bytes);
    std::vector<std::uint64_t> w(ne);
    for (std::uint64_t i = 0; i < ne; ++i)
      w[i] = get_le(buf.data() + weights_begin + i * g.weight_elem_bytes, g.weight_elem_bytes);
    g.weights = std::move(w);
  }
  validate(g);
  return g;
}

CsrGraph load_graph(const std::filesystem::path& path, const TextLoadOptions& text_opts) {
  char head[4] = {};
  {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string());
    f.read(head, 4);
  }
  if (std::memcmp(head, kMagic, 4) == 0) return load_csr_binary(path);
  return load_edge_list_text(path, text_opts);
}

}  // namespace emogi
