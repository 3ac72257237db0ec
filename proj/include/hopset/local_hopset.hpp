// Shortcut edges inside one small cluster.
//
// Two modes:
//   kClique - exact all-pairs distances, s(s-1)/2 edges, one hop suffices;
//   kTz     - a sampled distance-oracle hierarchy (levels A_0 .. A_{k-1},
//             each sampled from the previous with probability s^(-1/k));
//             every node gets exact-distance edges to its level pivots and
//             to its bunches.  Expected size O(k * s^(1+1/k)).
//
// The achieved hop bound is measured, not assumed: beta_prime is the
// smallest hop budget at which every pair of the cluster is within (1+eps')
// of its exact distance using cluster edges plus the shortcut edges.

#ifndef HOPSET_LOCAL_HOPSET_HPP_
#define HOPSET_LOCAL_HOPSET_HPP_

#include <string>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/rng.hpp"

namespace hopset {

enum class LocalMode { kClique, kTz };

LocalMode local_mode_from_string(const std::string& s);
std::string to_string(LocalMode m);

struct LocalHopsetResult {
  std::vector<Edge> edges;  // local ids of the cluster graph
  int beta_prime = 0;
  LocalMode mode = LocalMode::kClique;
};

// cluster_graph must be connected (throws std::invalid_argument otherwise);
// k >= 2, eps_prime >= 0.  The rng drives level sampling in kTz mode.
LocalHopsetResult build_local_hopset(const WeightedGraph& cluster_graph, int k,
                                     double eps_prime, LocalMode mode,
                                     Rng& rng);

}  // namespace hopset

#endif  // HOPSET_LOCAL_HOPSET_HPP_
