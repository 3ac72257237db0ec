// Undirected weighted graphs, shortest-path routines and seeded generators.
//
// Weights are 64-bit integers >= 1.  Infinity is a dedicated sentinel chosen
// so that one relaxation (dist + w) can never overflow; all comparisons are
// exact integer comparisons.

#ifndef HOPSET_GRAPH_HPP_
#define HOPSET_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hopset/rng.hpp"

namespace hopset {

using NodeId = std::uint32_t;
using Weight = std::int64_t;

inline constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;
inline constexpr int kNoHops = -1;

struct Edge {
  NodeId u, v;
  Weight w;
};

struct Arc {
  NodeId to;
  Weight w;
};

class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(NodeId n) : n_(n), adj_(n) {}

  NodeId num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Arc> neighbors(NodeId u) const { return adj_[u]; }

  // Throws std::invalid_argument on self-loops, out-of-range endpoints or
  // weights < 1.  Parallel edges are accepted (internal augmented graphs use
  // them); file readers do their own duplicate detection.
  void add_edge(NodeId u, NodeId v, Weight w);

  bool has_edge(NodeId u, NodeId v) const;
  Weight max_weight() const;

  // Weights must stay polynomial in n (w <= n^exponent); larger weights are
  // rejected as out of contract.
  void check_polynomial_weights(int exponent = 4) const;

  // Text format: first line "n m", then one "u v w" line per edge.
  // The reader rejects malformed headers, out-of-range ids, self-loops,
  // weights < 1 and duplicate (unordered) edges.
  static WeightedGraph read_edge_list(std::istream& in);
  void write_edge_list(std::ostream& out) const;

 private:
  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> adj_;
};

struct DistanceMap {
  std::vector<NodeId> sources;
  std::vector<Weight> dist;  // kInf where unreachable
  std::vector<int> hops;     // hops of the witnessing path, kNoHops where unreachable
};

DistanceMap dijkstra(const WeightedGraph& g, NodeId source);

// Exact hop-limited distances: dist[v] == min weight over paths with at most
// ell edges from the nearest source.  Updates are double-buffered per round,
// so values can never mix hop counts within a round.
DistanceMap bellman_ford_limited(const WeightedGraph& g,
                                 std::span<const NodeId> sources,
                                 std::int64_t ell);

// g plus extra edges (parallel edges allowed; shortest-path routines are
// indifferent to them).
WeightedGraph augment(const WeightedGraph& g, std::span<const Edge> extra);

// g plus extra edges with parallel edges collapsed to their minimum weight.
// Message-passing code requires this form (one word per pair per round).
WeightedGraph augment_min(const WeightedGraph& g, std::span<const Edge> extra);

// Subgraph induced by `members` with compact local ids; local id i maps to
// members[i].  `members` must be duplicate-free.
WeightedGraph induced_subgraph(const WeightedGraph& g,
                               std::span<const NodeId> members);

enum class GraphKind {
  kErdosRenyi,
  kGrid,
  kPath,
  kRandomGeometric,
  kBlobChain,
};

GraphKind graph_kind_from_string(const std::string& s);
std::string to_string(GraphKind k);

enum class WeightStyle {
  kUnit,        // all weights 1
  kUniform,     // uniform integer in [wmin, wmax]
  kLogUniform,  // bucketed by binary magnitude, then uniform inside the bucket
};

struct GenParams {
  double p = 0.0;           // erdos-renyi edge probability; 0 = 4 ln(n)/n
  NodeId rows = 0, cols = 0;  // grid; 0 = near-square power-of-two split
  double radius = 0.0;      // random-geometric; 0 = sqrt(2 ln(n)/n)
  NodeId blob_size = 0;     // blob-chain; 0 = 2 ceil(sqrt(n))
  bool largest_component = false;
  WeightStyle weights = WeightStyle::kLogUniform;
  Weight wmin = 1;
  Weight wmax = 0;          // 0 = n^2
};

WeightedGraph generate_graph(GraphKind kind, NodeId n, const GenParams& params,
                             std::uint64_t seed);

}  // namespace hopset

#endif  // HOPSET_GRAPH_HPP_
