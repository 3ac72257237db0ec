#include "hopset/local_hopset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hopset/oracles.hpp"

namespace hopset {

LocalMode local_mode_from_string(const std::string& s) {
  if (s == "clique") return LocalMode::kClique;
  if (s == "tz") return LocalMode::kTz;
  throw std::invalid_argument("unknown local mode: " + s);
}

std::string to_string(LocalMode m) {
  return m == LocalMode::kClique ? "clique" : "tz";
}

namespace {

// Smallest hop budget at which cluster edges + shortcuts give every pair a
// (1+eps') approximation of its exact distance.
int measure_beta_prime(const WeightedGraph& cluster,
                       const std::vector<Edge>& shortcuts,
                       const std::vector<std::vector<Weight>>& exact,
                       double eps_prime) {
  const NodeId s = cluster.num_nodes();
  WeightedGraph aug = augment(cluster, shortcuts);
  int beta = 0;
  for (NodeId src = 0; src < s; ++src) {
    std::vector<Weight> cur(s, kInf), next;
    cur[src] = 0;
    int hops = 0;
    auto satisfied = [&]() {
      for (NodeId v = 0; v < s; ++v) {
        if (exact[src][v] == kInf) continue;
        // cur[v] <= (1+eps') * exact  checked in integers:
        // cur*den <= exact*(den+num) with eps' ~ num/den at 1e-9 resolution.
        long double bound = (1.0L + static_cast<long double>(eps_prime)) *
                            static_cast<long double>(exact[src][v]);
        if (cur[v] == kInf || static_cast<long double>(cur[v]) > bound)
          return false;
      }
      return true;
    };
    while (!satisfied()) {
      next = cur;
      bool changed = false;
      for (const Edge& e : aug.edges()) {
        if (cur[e.u] != kInf && cur[e.u] + e.w < next[e.v]) {
          next[e.v] = cur[e.u] + e.w;
          changed = true;
        }
        if (cur[e.v] != kInf && cur[e.v] + e.w < next[e.u]) {
          next[e.u] = cur[e.v] + e.w;
          changed = true;
        }
      }
      if (!changed)
        throw std::logic_error("local hopset cannot reach (1+eps') coverage");
      cur = next;
      ++hops;
    }
    beta = std::max(beta, hops);
  }
  return std::max(beta, 1);
}

}  // namespace

LocalHopsetResult build_local_hopset(const WeightedGraph& cluster_graph, int k,
                                     double eps_prime, LocalMode mode,
                                     Rng& rng) {
  if (k < 2) throw std::invalid_argument("build_local_hopset: k must be >= 2");
  if (eps_prime < 0)
    throw std::invalid_argument("build_local_hopset: eps' must be >= 0");
  const NodeId s = cluster_graph.num_nodes();
  LocalHopsetResult out;
  out.mode = mode;
  if (s <= 1) {
    out.beta_prime = 1;
    return out;
  }

  auto exact = all_pairs_dijkstra(cluster_graph);
  for (NodeId u = 0; u < s; ++u)
    for (NodeId v = 0; v < s; ++v)
      if (exact[u][v] == kInf)
        throw std::invalid_argument("build_local_hopset: cluster is disconnected");

  if (mode == LocalMode::kClique) {
    for (NodeId u = 0; u < s; ++u)
      for (NodeId v = u + 1; v < s; ++v)
        out.edges.push_back({u, v, exact[u][v]});
    out.beta_prime = 1;
    return out;
  }

  // Sampled hierarchy: levels[0] = everyone, each next level keeps a node
  // with probability s^(-1/k).  level_of[v] = highest level containing v.
  double q = std::pow(static_cast<double>(s), -1.0 / static_cast<double>(k));
  std::vector<int> level_of(s, 0);
  std::vector<std::vector<NodeId>> levels(k);
  for (NodeId v = 0; v < s; ++v) levels[0].push_back(v);
  for (int i = 1; i < k; ++i) {
    for (NodeId v : levels[i - 1])
      if (rng.chance(q)) {
        levels[i].push_back(v);
        level_of[v] = i;
      }
  }

  // d(v, A_i) and the nearest level member (pivot), ties to the smaller id.
  // A_k is empty with d = inf.
  std::vector<std::vector<Weight>> dist_level(k + 1,
                                              std::vector<Weight>(s, kInf));
  std::vector<std::vector<NodeId>> pivot(k, std::vector<NodeId>(s, 0));
  for (int i = 0; i < k; ++i) {
    for (NodeId v = 0; v < s; ++v) {
      Weight best = kInf;
      NodeId arg = 0;
      for (NodeId w : levels[i]) {
        if (exact[v][w] < best || (exact[v][w] == best && w < arg)) {
          best = exact[v][w];
          arg = w;
        }
      }
      dist_level[i][v] = best;
      pivot[i][v] = arg;
    }
  }

  std::map<std::pair<NodeId, NodeId>, Weight> edge_set;
  auto add = [&](NodeId u, NodeId v, Weight w) {
    if (u == v) return;
    auto key = std::minmax(u, v);
    auto [it, fresh] = edge_set.insert({{key.first, key.second}, w});
    if (!fresh) it->second = std::min(it->second, w);
  };

  for (NodeId v = 0; v < s; ++v) {
    for (int i = 0; i < k; ++i) {
      if (dist_level[i][v] == kInf || levels[i].empty()) continue;
      add(v, pivot[i][v], exact[v][pivot[i][v]]);
      // Bunch at level i: nodes of A_i \ A_{i+1} strictly closer than A_{i+1}.
      for (NodeId w : levels[i]) {
        if (level_of[w] != i) continue;
        if (exact[v][w] < dist_level[i + 1][v]) add(v, w, exact[v][w]);
      }
    }
  }
  for (const auto& [key, w] : edge_set)
    out.edges.push_back({key.first, key.second, w});
  out.beta_prime = measure_beta_prime(cluster_graph, out.edges, exact, eps_prime);
  return out;
}

}  // namespace hopset
