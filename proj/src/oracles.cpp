#include "hopset/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hopset {

NodeId oracle_node_cap() {
  if (const char* env = std::getenv("HOPSET_ORACLE_CAP")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<NodeId>(v);
  }
  return kOracleNodeCap;
}

namespace {
void check_cap(const WeightedGraph& g, const char* who) {
  if (g.num_nodes() > oracle_node_cap())
    throw std::invalid_argument(std::string(who) +
                                ": graph exceeds oracle node cap (" +
                                std::to_string(oracle_node_cap()) + ")");
}
}  // namespace

std::vector<std::vector<Weight>> all_pairs_dijkstra(const WeightedGraph& g) {
  check_cap(g, "all_pairs_dijkstra");
  std::vector<std::vector<Weight>> out;
  out.reserve(g.num_nodes());
  for (NodeId s = 0; s < g.num_nodes(); ++s)
    out.push_back(dijkstra(g, s).dist);
  return out;
}

std::vector<std::vector<Weight>> floyd_warshall(const WeightedGraph& g) {
  check_cap(g, "floyd_warshall");
  const NodeId n = g.num_nodes();
  std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, kInf));
  for (NodeId v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
  }
  for (NodeId k = 0; k < n; ++k)
    for (NodeId i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (NodeId j = 0; j < n; ++j) {
        if (d[k][j] == kInf) continue;
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  return d;
}

std::vector<Weight> hop_limited_from(const WeightedGraph& g, NodeId source,
                                     std::int64_t ell) {
  const NodeId n = g.num_nodes();
  std::vector<Weight> cur(n, kInf), next;
  cur[source] = 0;
  next = cur;
  for (std::int64_t h = 1; h <= ell; ++h) {
    bool changed = false;
    for (const Edge& e : g.edges()) {
      if (cur[e.u] != kInf && cur[e.u] + e.w < next[e.v]) {
        next[e.v] = cur[e.u] + e.w;
        changed = true;
      }
      if (cur[e.v] != kInf && cur[e.v] + e.w < next[e.u]) {
        next[e.u] = cur[e.v] + e.w;
        changed = true;
      }
    }
    cur = next;
    if (!changed) break;
  }
  return cur;
}

std::vector<std::vector<Weight>> hop_limited_oracle(const WeightedGraph& g,
                                                    std::int64_t ell) {
  check_cap(g, "hop_limited_oracle");
  std::vector<std::vector<Weight>> out;
  out.reserve(g.num_nodes());
  for (NodeId s = 0; s < g.num_nodes(); ++s)
    out.push_back(hop_limited_from(g, s, ell));
  return out;
}

}  // namespace hopset
