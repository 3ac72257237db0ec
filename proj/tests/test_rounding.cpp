#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "hopset/graph.hpp"
#include "hopset/rng.hpp"
#include "hopset/rounding.hpp"

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

// Exact ratio check eta*hat/w in [1, 1+eps0] using integer cross products.
bool ratio_in_band(Weight w, Weight hat, const RoundedGraph& rg) {
  const auto lhs = static_cast<__int128>(rg.eta_num) * hat;
  const auto w128 = static_cast<__int128>(w);
  if (lhs < w128 * rg.eta_den) return false;  // below 1
  // eta*hat/w <= 1+eps0  <=>  eta_num*hat*eps0.den <= w*eta_den*(den+num)
  const auto den = static_cast<__int128>(rg.eps0.den);
  const auto num = static_cast<__int128>(rg.eps0.num);
  return lhs * den <= w128 * rg.eta_den * (den + num);
}

}  // namespace

TEST_CASE("worked example: w=7, R=8, ell=4, eps0=1 gives eta=2 and hat=4") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 7);
  const auto rg = round_weights(g, 8, 4, Rational{1, 1});
  CHECK(rg.eta_num == 8);  // eta = 8/4 = 2
  CHECK(rg.eta_den == 4);
  REQUIRE(rg.rounded.num_edges() == 1);
  CHECK(rg.rounded.edges()[0].w == 4);  // ceil(7/2)
}

TEST_CASE("an exact multiple of eta rounds without error") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 6);  // eta = 2, w = 3*eta
  const auto rg = round_weights(g, 8, 4, Rational{1, 1});
  CHECK(rg.rounded.edges()[0].w == 3);
  CHECK(rg.unround(3) == 6);
}

TEST_CASE("per-edge rounding invariants on random graphs") {
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    const auto g = random_graph(24, 0.3, 500, seed);
    for (const auto& [R, ell, eps0] :
         std::vector<std::tuple<std::int64_t, std::int64_t, Rational>>{
             {16, 5, {1, 2}}, {64, 9, {1, 4}}, {256, 15, {1, 1}}}) {
      const auto rg = round_weights(g, R, ell, eps0);
      REQUIRE(rg.rounded.num_edges() == g.num_edges());
      for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const Weight w = g.edges()[i].w;
        const Weight hat = rg.rounded.edges()[i].w;
        CHECK(hat >= 1);
        // eta * hat >= w
        CHECK(static_cast<__int128>(rg.eta_num) * hat >=
              static_cast<__int128>(w) * rg.eta_den);
        // eta * hat < w + eta
        CHECK(static_cast<__int128>(rg.eta_num) * hat <
              static_cast<__int128>(w) * rg.eta_den + rg.eta_num);
      }
    }
  }
}

TEST_CASE("unround is the exact inverse scaling with ceiling") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 10);
  const auto rg = round_weights(g, 10, 3, Rational{1, 2});  // eta = 10/6
  CHECK(rg.unround(3) == 5);   // ceil(3 * 10 / 6)
  CHECK(rg.unround(6) == 10);  // exact
  CHECK(rg.unround(kInf) == kInf);
}

TEST_CASE("sampled in-scale paths have ratio within [1, 1+eps0]") {
  const auto g = random_graph(40, 0.25, 64, 5);
  const std::int64_t R = 128, ell = 9;
  const Rational eps0{1, 2};
  const auto rg = round_weights(g, R, ell, eps0);

  Rng rng(77);
  int found = 0;
  for (int attempt = 0; attempt < 20000 && found < 300; ++attempt) {
    NodeId u = static_cast<NodeId>(rng.uniform_u64(0, g.num_nodes() - 1));
    Weight w_true = 0, w_hat = 0;
    std::int64_t hops = 0;
    while (hops < ell) {
      const auto nbrs = g.neighbors(u);
      if (nbrs.empty()) break;
      const auto pick = rng.uniform_u64(0, nbrs.size() - 1);
      const Arc& a = nbrs[pick];
      if (w_true + a.w > 2 * R) break;
      // parallel arrays: rounded graph preserves edge order, so look the
      // rounded weight up through the adjacency of the rounded graph
      Weight hat = 0;
      for (const Arc& b : rg.rounded.neighbors(u))
        if (b.to == a.to) {
          hat = b.w;
          break;
        }
      REQUIRE(hat >= 1);
      w_true += a.w;
      w_hat += hat;
      u = a.to;
      ++hops;
      if (w_true >= R) break;
    }
    if (w_true < R || w_true > 2 * R) continue;
    ++found;
    CHECK(ratio_in_band(w_true, w_hat, rg));
  }
  CHECK(found >= 100);  // the sampler must actually exercise the property
}

TEST_CASE("parameter validation") {
  WeightedGraph g(2);
  g.add_edge(0, 1, 3);
  CHECK_THROWS_AS(round_weights(g, 0, 4, Rational{1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(round_weights(g, 8, 0, Rational{1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(round_weights(g, 8, 4, Rational{0, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(round_weights(g, 8, 4, Rational{3, 2}),
                  std::invalid_argument);
}
