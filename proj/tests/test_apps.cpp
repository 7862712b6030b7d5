#include <doctest.h>

#include "emogi/apps.hpp"
#include "emogi/error.hpp"
#include "oracles.hpp"

using namespace emogi;

namespace {

using EdgeList = std::vector<std::pair<vertex_t, vertex_t>>;

const PageRankParams kTightPr{0.85, 10000, 1e-14};

double linf(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("BFS on a path and a star") {
  const CsrGraph path = from_edge_list(4, EdgeList{{0, 1}, {1, 2}, {2, 3}});
  const auto r = bfs(path, 0);
  CHECK(r.values == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(r.iterations == 4);
  CHECK(r.per_iteration.size() == 4);
  CHECK(r.edges_traversed == 3);

  const CsrGraph star = from_edge_list(5, EdgeList{{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {}, false);
  CHECK(bfs(star, 0).iterations == 2);
  const auto back = bfs(path, 3);
  CHECK(back.values[0] == kUnreached);
  CHECK(back.iterations == 1);
}

TEST_CASE("SSSP picks the cheaper route") {
  const std::vector<std::uint64_t> w{5, 7};
  const CsrGraph chain = from_edge_list(3, EdgeList{{0, 1}, {1, 2}}, w);
  CHECK(sssp(chain, 0).values == std::vector<std::uint64_t>{0, 5, 12});

  // 0->2 directly costs 10; via 1 costs 6.
  const std::vector<std::uint64_t> w2{10, 3, 3};
  const CsrGraph tri = from_edge_list(3, EdgeList{{0, 2}, {0, 1}, {1, 2}}, w2);
  CHECK(sssp(tri, 0).values[2] == 6);
}

TEST_CASE("CC on two triangles and an edgeless graph") {
  const CsrGraph g = from_edge_list(6, EdgeList{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}, {}, false);
  CHECK(cc(g).values == std::vector<std::uint64_t>{0, 0, 0, 3, 3, 3});
  CsrGraph empty = generate_uniform(4, 0, 0, 1);
  empty.directed = false;
  CHECK(cc(empty).values == std::vector<std::uint64_t>{0, 1, 2, 3});
}

TEST_CASE("PageRank small cases") {
  const CsrGraph cycle = from_edge_list(2, EdgeList{{0, 1}, {1, 0}});
  const auto r = pagerank(cycle);
  CHECK(r.ranks[0] == doctest::Approx(0.5));
  CHECK(r.ranks[1] == doctest::Approx(0.5));
  const CsrGraph single = generate_uniform(1, 0, 0, 1);
  CHECK(pagerank(single).ranks[0] == doctest::Approx(1.0));
  CHECK_FALSE(r.multigraph);
  const CsrGraph dup = from_edge_list(2, EdgeList{{0, 1}, {0, 1}, {1, 0}});
  CHECK(pagerank(dup).multigraph);
}

TEST_CASE("traversal error cases") {
  const CsrGraph g = from_edge_list(3, EdgeList{{0, 1}, {1, 2}});
  CHECK_THROWS_AS(cc(g), ParameterError);
  CHECK_THROWS_AS(sssp(g, 0), ParameterError);
  CHECK_THROWS_AS(bfs(g, 3), ParameterError);
  CHECK_THROWS_AS(pagerank(g, PageRankParams{1.0, 10, 1e-6}), ParameterError);
}

TEST_CASE("property: algorithms match their oracles on random graphs") {
  Rng rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t n = 2 + rng.below(199);
    const std::uint64_t m = rng.below(n * 4);
    CsrGraph dg = oracle::random_graph(rng, n, m, false);
    ensure_weights(dg, trial, 1, 20);
    const vertex_t s = rng.below(n);
    CHECK(bfs(dg, s).values == oracle::queue_bfs(dg, s));
    CHECK(sssp(dg, s).values == oracle::dijkstra(dg, s));
    CHECK(linf(pagerank(dg, kTightPr).ranks, oracle::dense_pagerank(dg, 0.85)) < 1e-8);

    const CsrGraph ug = oracle::random_graph(rng, n, rng.below(n * 2), true);
    CHECK(cc(ug).values == oracle::union_find_labels(ug));
  }
}

TEST_CASE("property: results do not depend on the access strategy") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t n = 20 + rng.below(180);
    CsrGraph g = oracle::random_graph(rng, n, rng.below(n * 6), true);
    ensure_weights(g, trial);
    const vertex_t s = rng.below(n);
    const auto ref_bfs = bfs(g, s, AccessStrategy::Naive).values;
    const auto ref_sssp = sssp(g, s, AccessStrategy::Naive).values;
    const auto ref_cc = cc(g, AccessStrategy::Naive).values;
    const auto ref_pr = pagerank(g, {}, {AccessStrategy::Naive, {}, {}}).ranks;
    for (AccessStrategy st : {AccessStrategy::Merged, AccessStrategy::MergedAligned}) {
      CHECK(bfs(g, s, st).values == ref_bfs);
      CHECK(sssp(g, s, st).values == ref_sssp);
      CHECK(cc(g, st).values == ref_cc);
      CHECK(pagerank(g, {}, {st, {}, {}}).ranks == ref_pr);
    }
  }
}

TEST_CASE("property: traced elements equal the frontier degree sum") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t n = 10 + rng.below(190);
    CsrGraph g = oracle::random_graph(rng, n, rng.below(n * 8), false);
    ensure_weights(g, trial);
    for (AccessStrategy st : kAllStrategies) {
      std::uint64_t edge_lanes = 0, weight_lanes = 0;
      TraversalOptions opts{st, {}, [&](const WarpAccess& wa) {
                              (wa.region == Region::Edges ? edge_lanes : weight_lanes) += wa.active_lanes();
                            }};
      const auto r = sssp(g, 0, opts);
      CHECK(edge_lanes == r.edges_traversed);
      CHECK(weight_lanes == r.edges_traversed);
      CHECK(r.per_iteration.size() == r.iterations);
    }
  }
}
