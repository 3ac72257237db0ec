// Slow, obviously-correct reference computations used by tests and the
// verification harness.  Everything here is centralized and quadratic or
// worse on purpose; production code paths must match these bit for bit.

#ifndef HOPSET_ORACLES_HPP_
#define HOPSET_ORACLES_HPP_

#include <vector>

#include "hopset/graph.hpp"

namespace hopset {

// Default cap on the number of nodes the quadratic oracles accept; can be
// raised via the HOPSET_ORACLE_CAP environment variable.
inline constexpr NodeId kOracleNodeCap = 512;

NodeId oracle_node_cap();

// All-pairs exact distances (one Dijkstra per node).  out[u][v] == kInf when
// unreachable.
std::vector<std::vector<Weight>> all_pairs_dijkstra(const WeightedGraph& g);

// Independent check implementation for small n.
std::vector<std::vector<Weight>> floyd_warshall(const WeightedGraph& g);

// All-pairs hop-limited distances via the textbook recurrence
//   d[h][v] = min(d[h-1][v], min over edges (u,v) of d[h-1][u] + w(u,v)),
// evaluated per source with double buffering.  out[u][v] == min weight of a
// u-v path with at most ell edges.
std::vector<std::vector<Weight>> hop_limited_oracle(const WeightedGraph& g,
                                                    std::int64_t ell);

// Single-source flavor of the same recurrence (exact, double-buffered).
std::vector<Weight> hop_limited_from(const WeightedGraph& g, NodeId source,
                                     std::int64_t ell);

}  // namespace hopset

#endif  // HOPSET_ORACLES_HPP_
