#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/oracles.hpp"
#include "hopset/rng.hpp"

using namespace hopset;

namespace {

WeightedGraph random_graph(NodeId n, double p, Weight wmax, std::uint64_t seed) {
  Rng rng(seed);
  WeightedGraph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.chance(p))
        g.add_edge(u, v, static_cast<Weight>(rng.uniform_u64(1, wmax)));
  return g;
}

}  // namespace

TEST_CASE("dijkstra on a two-edge path") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 3);
  g.add_edge(1, 2, 4);
  const auto dm = dijkstra(g, 0);
  CHECK(dm.dist == std::vector<Weight>{0, 3, 7});
  CHECK(dm.hops == std::vector<int>{0, 1, 2});
}

TEST_CASE("dijkstra: source distance is zero, unreachable is infinite") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 5);
  const auto dm = dijkstra(g, 1);
  CHECK(dm.dist[1] == 0);
  CHECK(dm.dist[0] == 5);
  CHECK(dm.dist[2] == kInf);
  CHECK(dm.hops[2] == kNoHops);
}

TEST_CASE("all-pairs dijkstra matches floyd-warshall on random graphs") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto g = random_graph(32, 0.2, 50, seed);
    CHECK(all_pairs_dijkstra(g) == floyd_warshall(g));
  }
}

TEST_CASE("distances are symmetric on undirected graphs") {
  const auto g = random_graph(24, 0.3, 30, 9);
  const auto d = all_pairs_dijkstra(g);
  for (NodeId u = 0; u < 24; ++u)
    for (NodeId v = 0; v < 24; ++v) CHECK(d[u][v] == d[v][u]);
}

TEST_CASE("hop-limited search with zero hops") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1);
  const std::vector<NodeId> src{0, 2};
  const auto dm = bellman_ford_limited(g, src, 0);
  CHECK(dm.dist == std::vector<Weight>{0, kInf, 0});
}

TEST_CASE("hop-limited search on the triangle with a heavy chord") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 10);
  const std::vector<NodeId> src{0};
  CHECK(bellman_ford_limited(g, src, 1).dist[2] == 10);
  CHECK(bellman_ford_limited(g, src, 2).dist[2] == 2);
}

TEST_CASE("hop-limited search equals dijkstra at ell = n-1") {
  for (std::uint64_t seed : {4ULL, 5ULL}) {
    const auto g = random_graph(20, 0.25, 40, seed);
    for (NodeId s = 0; s < 20; ++s) {
      const std::vector<NodeId> src{s};
      CHECK(bellman_ford_limited(g, src, 19).dist == dijkstra(g, s).dist);
    }
  }
}

TEST_CASE("hop-limited search is pointwise monotone in the hop budget") {
  const auto g = random_graph(16, 0.3, 20, 6);
  const std::vector<NodeId> src{3};
  auto prev = bellman_ford_limited(g, src, 0).dist;
  for (std::int64_t ell = 1; ell < 16; ++ell) {
    const auto cur = bellman_ford_limited(g, src, ell).dist;
    for (NodeId v = 0; v < 16; ++v) CHECK(cur[v] <= prev[v]);
    prev = cur;
  }
}

TEST_CASE("multi-source search takes the minimum over sources") {
  const auto g = random_graph(18, 0.3, 25, 7);
  const std::vector<NodeId> src{2, 11, 15};
  const auto joint = bellman_ford_limited(g, src, 17).dist;
  for (NodeId v = 0; v < 18; ++v) {
    Weight best = kInf;
    for (NodeId s : src) best = std::min(best, dijkstra(g, s).dist[v]);
    CHECK(joint[v] == best);
  }
}

TEST_CASE("hop-limited search matches the dynamic-program oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = random_graph(14, 0.3, 30, 100 + seed);
    for (std::int64_t ell = 0; ell < 14; ++ell) {
      const auto table = hop_limited_oracle(g, ell);
      for (NodeId s = 0; s < 14; ++s) {
        const std::vector<NodeId> src{s};
        CHECK(bellman_ford_limited(g, src, ell).dist == table[s]);
      }
    }
  }
}

TEST_CASE("hop-limited oracle at ell=1 is the adjacency structure") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 7);
  const auto table = hop_limited_oracle(g, 1);
  CHECK(table[0][0] == 0);
  CHECK(table[0][1] == 7);
  CHECK(table[0][2] == kInf);
}

TEST_CASE("hop-limited oracle at ell=n-1 equals all-pairs dijkstra") {
  const auto g = random_graph(16, 0.25, 40, 11);
  CHECK(hop_limited_oracle(g, 15) == all_pairs_dijkstra(g));
}

TEST_CASE("single-source oracle row agrees with the table") {
  const auto g = random_graph(12, 0.3, 15, 12);
  const auto table = hop_limited_oracle(g, 5);
  for (NodeId s = 0; s < 12; ++s) CHECK(hop_limited_from(g, s, 5) == table[s]);
}

TEST_CASE("edge validation") {
  WeightedGraph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1, 5), std::invalid_argument);   // self-loop
  CHECK_THROWS_AS(g.add_edge(0, 3, 5), std::invalid_argument);   // range
  CHECK_THROWS_AS(g.add_edge(0, 1, 0), std::invalid_argument);   // weight < 1
  CHECK_THROWS_AS(g.add_edge(0, 1, -2), std::invalid_argument);  // negative
  g.add_edge(0, 1, 1);
  CHECK(g.num_edges() == 1);
}

TEST_CASE("polynomial weight contract") {
  WeightedGraph g(4);
  g.add_edge(0, 1, 256);  // == 4^4, at the bound
  CHECK_NOTHROW(g.check_polynomial_weights(4));
  g.add_edge(1, 2, 257);
  CHECK_THROWS_AS(g.check_polynomial_weights(4), std::invalid_argument);
}

TEST_CASE("edge-list io round trip") {
  const auto g = random_graph(10, 0.4, 99, 13);
  std::stringstream ss;
  g.write_edge_list(ss);
  const auto h = WeightedGraph::read_edge_list(ss);
  REQUIRE(h.num_nodes() == g.num_nodes());
  REQUIRE(h.num_edges() == g.num_edges());
  std::stringstream again;
  h.write_edge_list(again);
  std::stringstream first;
  g.write_edge_list(first);
  CHECK(again.str() == first.str());
}

TEST_CASE("edge-list reader rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::stringstream ss(text);
    return WeightedGraph::read_edge_list(ss);
  };
  CHECK_THROWS(parse("not a header"));
  CHECK_THROWS(parse("3 2\n0 1 4\n"));            // truncated edge list
  CHECK_THROWS(parse("3 1\n0 3 4\n"));            // id out of range
  CHECK_THROWS(parse("3 1\n0 0 4\n"));            // self-loop
  CHECK_THROWS(parse("3 1\n0 1 0\n"));            // weight < 1
  CHECK_THROWS(parse("3 2\n0 1 4\n1 0 6\n"));     // duplicate unordered edge
  CHECK_NOTHROW(parse("3 2\n0 1 4\n1 2 6\n"));
}

TEST_CASE("augment keeps parallel edges, augment_min collapses them") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 5);
  const std::vector<Edge> extra{{0, 1, 3}, {1, 2, 7}};
  const auto loose = augment(g, extra);
  CHECK(loose.num_edges() == 3);
  const auto tight = augment_min(g, extra);
  CHECK(tight.num_edges() == 2);
  bool found = false;
  for (const Arc& a : tight.neighbors(0))
    if (a.to == 1) {
      CHECK(a.w == 3);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("induced subgraph maps ids compactly") {
  WeightedGraph g(5);
  g.add_edge(1, 3, 4);
  g.add_edge(3, 4, 2);
  g.add_edge(0, 2, 9);
  const std::vector<NodeId> members{1, 3, 4};
  const auto sub = induced_subgraph(g, members);
  REQUIRE(sub.num_nodes() == 3);
  REQUIRE(sub.num_edges() == 2);
  const auto d = dijkstra(sub, 0);  // local id of node 1
  CHECK(d.dist == std::vector<Weight>{0, 4, 6});
}

TEST_CASE("path generator produces a unit path") {
  GenParams params;
  params.weights = WeightStyle::kUnit;
  const auto g = generate_graph(GraphKind::kPath, 5, params, 1);
  REQUIRE(g.num_edges() == 4);
  for (const Edge& e : g.edges()) CHECK(e.w == 1);
  CHECK(dijkstra(g, 0).dist[4] == 4);
}

TEST_CASE("grid generator edge count") {
  GenParams params;
  params.rows = 4;
  params.cols = 4;
  const auto g = generate_graph(GraphKind::kGrid, 16, params, 1);
  CHECK(g.num_edges() == 24);  // 2 * 4 * 3
}

TEST_CASE("generators are deterministic in the seed") {
  GenParams params;
  params.p = 0.05;
  for (GraphKind kind : {GraphKind::kErdosRenyi, GraphKind::kGrid,
                         GraphKind::kRandomGeometric, GraphKind::kBlobChain}) {
    const auto a = generate_graph(kind, 128, params, 7);
    const auto b = generate_graph(kind, 128, params, 7);
    std::stringstream sa, sb;
    a.write_edge_list(sa);
    b.write_edge_list(sb);
    CHECK(sa.str() == sb.str());
    const auto c = generate_graph(kind, 128, params, 8);
    std::stringstream sc;
    c.write_edge_list(sc);
    CHECK(sa.str() != sc.str());
  }
}

TEST_CASE("largest-component extraction leaves a connected graph") {
  GenParams params;
  params.p = 0.02;  // sparse enough to disconnect at n=64
  params.largest_component = true;
  const auto g = generate_graph(GraphKind::kErdosRenyi, 64, params, 3);
  REQUIRE(g.num_nodes() >= 1);
  const auto dm = dijkstra(g, 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) CHECK(dm.dist[v] < kInf);
}

TEST_CASE("blob-chain generator is connected with heavy chain edges") {
  GenParams params;
  const auto g = generate_graph(GraphKind::kBlobChain, 96, params, 5);
  const auto dm = dijkstra(g, 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) CHECK(dm.dist[v] < kInf);
}

TEST_CASE("generated weights respect the polynomial contract") {
  GenParams params;
  for (GraphKind kind : {GraphKind::kErdosRenyi, GraphKind::kGrid,
                         GraphKind::kPath, GraphKind::kRandomGeometric,
                         GraphKind::kBlobChain}) {
    const auto g = generate_graph(kind, 64, params, 2);
    CHECK_NOTHROW(g.check_polynomial_weights(4));
  }
}
