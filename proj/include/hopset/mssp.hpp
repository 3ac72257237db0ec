// Multi-source hop-limited queries over a graph plus its shortcut edges.
//
// Semantics: estimate[s][v] = exact beta-hop-limited distance from s to v on
// the augmented graph.  Executed two ways that must agree bit for bit:
// a plain in-process sweep, and pipelined Bellman-Ford streams on the clique
// simulator (one stream per source, rounds charged max over streams plus the
// source count for pipeline startup).

#ifndef HOPSET_MSSP_HPP_
#define HOPSET_MSSP_HPP_

#include <span>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/sim.hpp"

namespace hopset {

struct MsspConfig {
  double source_budget_factor = 2.0;  // at most factor * sqrt(n) sources
  bool use_simulator = true;          // also run (and charge) the message version
};

struct QueryResult {
  std::vector<NodeId> sources;
  std::vector<std::vector<Weight>> estimate;  // [source index][node]
  std::int64_t rounds = 0;                    // simulator charge, 0 if skipped
};

// Throws std::invalid_argument when more than factor*sqrt(n) sources are
// requested.  beta >= 0 (beta = 0 leaves only the sources at distance 0).
QueryResult mssp_query(const WeightedGraph& g, std::span<const Edge> hopset,
                       std::span<const NodeId> sources, std::int64_t beta,
                       const MsspConfig& cfg, Simulator* sim);

// Hop-limited Bellman-Ford as simulator streams; shared with the builder.
// Returns per-source distance arrays; charges `label` with max stream rounds
// plus `extra_rounds`.  The graph must be free of parallel edges (one word
// per ordered pair per round).
std::vector<std::vector<Weight>> limited_bf_streams(
    const WeightedGraph& g, std::span<const NodeId> sources, std::int64_t ell,
    Simulator& sim, const std::string& label, std::int64_t extra_rounds,
    std::int64_t* rounds_out = nullptr);

}  // namespace hopset

#endif  // HOPSET_MSSP_HPP_
