#include "hopset/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hopset {

void WeightedGraph::add_edge(NodeId u, NodeId v, Weight w) {
  if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (w < 1) throw std::invalid_argument("edge weights must be >= 1");
  edges_.push_back({u, v, w});
  adj_[u].push_back({v, w});
  adj_[v].push_back({u, w});
}

bool WeightedGraph::has_edge(NodeId u, NodeId v) const {
  for (const Arc& a : adj_[u])
    if (a.to == v) return true;
  return false;
}

Weight WeightedGraph::max_weight() const {
  Weight m = 0;
  for (const Edge& e : edges_) m = std::max(m, e.w);
  return m;
}

void WeightedGraph::check_polynomial_weights(int exponent) const {
  long double bound = std::pow(static_cast<long double>(std::max<NodeId>(n_, 2)),
                               exponent);
  for (const Edge& e : edges_) {
    if (static_cast<long double>(e.w) > bound)
      throw std::invalid_argument("edge weight exceeds polynomial bound n^" +
                                  std::to_string(exponent));
  }
}

WeightedGraph WeightedGraph::read_edge_list(std::istream& in) {
  std::int64_t n, m;
  if (!(in >> n >> m) || n < 0 || m < 0)
    throw std::invalid_argument("edge list: malformed header");
  WeightedGraph g(static_cast<NodeId>(n));
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t u, v, w;
    if (!(in >> u >> v >> w))
      throw std::invalid_argument("edge list: truncated at edge " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge list: endpoint out of range at edge " +
                                  std::to_string(i));
    NodeId a = static_cast<NodeId>(std::min(u, v));
    NodeId b = static_cast<NodeId>(std::max(u, v));
    if (!seen.insert({a, b}).second)
      throw std::invalid_argument("edge list: duplicate edge " + std::to_string(u) +
                                  " " + std::to_string(v));
    g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
  }
  return g;
}

void WeightedGraph::write_edge_list(std::ostream& out) const {
  out << n_ << ' ' << edges_.size() << '\n';
  for (const Edge& e : edges_) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

DistanceMap dijkstra(const WeightedGraph& g, NodeId source) {
  const NodeId n = g.num_nodes();
  DistanceMap out;
  out.sources = {source};
  out.dist.assign(n, kInf);
  out.hops.assign(n, kNoHops);
  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  out.dist[source] = 0;
  out.hops[source] = 0;
  pq.push({0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != out.dist[u]) continue;
    for (const Arc& a : g.neighbors(u)) {
      Weight nd = d + a.w;
      if (nd < out.dist[a.to]) {
        out.dist[a.to] = nd;
        out.hops[a.to] = out.hops[u] + 1;
        pq.push({nd, a.to});
      }
    }
  }
  return out;
}

DistanceMap bellman_ford_limited(const WeightedGraph& g,
                                 std::span<const NodeId> sources,
                                 std::int64_t ell) {
  const NodeId n = g.num_nodes();
  if (sources.empty()) throw std::invalid_argument("bellman_ford_limited: no sources");
  DistanceMap out;
  out.sources.assign(sources.begin(), sources.end());
  out.dist.assign(n, kInf);
  out.hops.assign(n, kNoHops);
  for (NodeId s : sources) {
    if (s >= n) throw std::invalid_argument("bellman_ford_limited: source out of range");
    out.dist[s] = 0;
    out.hops[s] = 0;
  }
  std::vector<NodeId> frontier(out.sources);
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  std::vector<std::pair<NodeId, Weight>> updates;
  for (std::int64_t h = 1; h <= ell && !frontier.empty(); ++h) {
    // Gather improvements against the previous round's values, apply after
    // the scan: dist then equals the exact <=h-hop distance.
    updates.clear();
    for (NodeId u : frontier) {
      Weight du = out.dist[u];
      for (const Arc& a : g.neighbors(u)) {
        Weight nd = du + a.w;
        if (nd < out.dist[a.to]) updates.push_back({a.to, nd});
      }
    }
    frontier.clear();
    for (auto [v, nd] : updates) {
      if (nd < out.dist[v]) {
        out.dist[v] = nd;
        out.hops[v] = static_cast<int>(h);
        frontier.push_back(v);
      }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  }
  return out;
}

WeightedGraph augment(const WeightedGraph& g, std::span<const Edge> extra) {
  WeightedGraph out(g.num_nodes());
  for (const Edge& e : g.edges()) out.add_edge(e.u, e.v, e.w);
  for (const Edge& e : extra) out.add_edge(e.u, e.v, e.w);
  return out;
}

WeightedGraph augment_min(const WeightedGraph& g, std::span<const Edge> extra) {
  std::map<std::pair<NodeId, NodeId>, Weight> best;
  auto fold = [&best](const Edge& e) {
    auto key = std::minmax(e.u, e.v);
    auto [it, fresh] = best.insert({{key.first, key.second}, e.w});
    if (!fresh) it->second = std::min(it->second, e.w);
  };
  for (const Edge& e : g.edges()) fold(e);
  for (const Edge& e : extra) fold(e);
  WeightedGraph out(g.num_nodes());
  for (const auto& [key, w] : best) out.add_edge(key.first, key.second, w);
  return out;
}

WeightedGraph induced_subgraph(const WeightedGraph& g,
                               std::span<const NodeId> members) {
  std::vector<std::int64_t> local(g.num_nodes(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (local[members[i]] != -1)
      throw std::invalid_argument("induced_subgraph: duplicate member");
    local[members[i]] = static_cast<std::int64_t>(i);
  }
  WeightedGraph sub(static_cast<NodeId>(members.size()));
  for (const Edge& e : g.edges()) {
    std::int64_t lu = local[e.u], lv = local[e.v];
    if (lu >= 0 && lv >= 0)
      sub.add_edge(static_cast<NodeId>(lu), static_cast<NodeId>(lv), e.w);
  }
  return sub;
}

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "erdos-renyi") return GraphKind::kErdosRenyi;
  if (s == "grid") return GraphKind::kGrid;
  if (s == "path") return GraphKind::kPath;
  if (s == "random-geometric") return GraphKind::kRandomGeometric;
  if (s == "blob-chain") return GraphKind::kBlobChain;
  throw std::invalid_argument("unknown graph kind: " + s);
}

std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::kErdosRenyi: return "erdos-renyi";
    case GraphKind::kGrid: return "grid";
    case GraphKind::kPath: return "path";
    case GraphKind::kRandomGeometric: return "random-geometric";
    case GraphKind::kBlobChain: return "blob-chain";
  }
  return "?";
}

namespace {

Weight draw_weight(const GenParams& p, Weight wmax, Rng& rng) {
  switch (p.weights) {
    case WeightStyle::kUnit:
      return 1;
    case WeightStyle::kUniform:
      return rng.uniform_i64(p.wmin, wmax);
    case WeightStyle::kLogUniform: {
      // Pick a binary magnitude bucket uniformly, then a value inside it.
      // Spreads weights across the whole range of scales with integer-only
      // arithmetic.
      int buckets = 0;
      while ((p.wmin << (buckets + 1)) <= wmax && buckets < 62) ++buckets;
      int b = static_cast<int>(rng.uniform_u64(0, static_cast<std::uint64_t>(buckets)));
      Weight lo = p.wmin << b;
      Weight hi = std::min<Weight>(wmax, (lo << 1) - 1);
      return rng.uniform_i64(lo, hi);
    }
  }
  return 1;
}

WeightedGraph largest_component_of(const WeightedGraph& g) {
  const NodeId n = g.num_nodes();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = ncomp;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (const Arc& a : g.neighbors(u))
        if (comp[a.to] == -1) {
          comp[a.to] = ncomp;
          stack.push_back(a.to);
        }
    }
    ++ncomp;
  }
  std::vector<std::size_t> size(ncomp, 0);
  for (NodeId v = 0; v < n; ++v) ++size[comp[v]];
  int best = static_cast<int>(std::max_element(size.begin(), size.end()) -
                              size.begin());
  std::vector<NodeId> members;
  for (NodeId v = 0; v < n; ++v)
    if (comp[v] == best) members.push_back(v);
  return induced_subgraph(g, members);
}

}  // namespace

WeightedGraph generate_graph(GraphKind kind, NodeId n, const GenParams& params,
                             std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_graph: n must be positive");
  Rng rng(seed ^ 0x5851f42d4c957f2dULL);
  GenParams p = params;
  if (p.wmax == 0) p.wmax = static_cast<Weight>(n) * static_cast<Weight>(n);
  if (p.wmax < p.wmin) throw std::invalid_argument("generate_graph: wmax < wmin");

  WeightedGraph g(n);
  switch (kind) {
    case GraphKind::kErdosRenyi: {
      double prob = p.p > 0 ? p.p : 4.0 * std::log(static_cast<double>(n)) /
                                        static_cast<double>(n);
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
          if (rng.chance(prob)) g.add_edge(u, v, draw_weight(p, p.wmax, rng));
      break;
    }
    case GraphKind::kGrid: {
      NodeId rows = p.rows, cols = p.cols;
      if (rows == 0 || cols == 0) {
        rows = 1;
        while (rows * 2 * rows * 2 <= n) rows *= 2;
        while (n % rows != 0) rows /= 2;
        cols = n / rows;
      }
      if (rows * cols != n)
        throw std::invalid_argument("generate_graph: grid rows*cols != n");
      auto id = [cols](NodeId r, NodeId c) { return r * cols + c; };
      for (NodeId r = 0; r < rows; ++r)
        for (NodeId c = 0; c < cols; ++c) {
          if (c + 1 < cols)
            g.add_edge(id(r, c), id(r, c + 1), draw_weight(p, p.wmax, rng));
          if (r + 1 < rows)
            g.add_edge(id(r, c), id(r + 1, c), draw_weight(p, p.wmax, rng));
        }
      break;
    }
    case GraphKind::kPath: {
      for (NodeId u = 0; u + 1 < n; ++u)
        g.add_edge(u, u + 1, draw_weight(p, p.wmax, rng));
      break;
    }
    case GraphKind::kRandomGeometric: {
      double radius = p.radius > 0
                          ? p.radius
                          : std::sqrt(2.0 * std::log(static_cast<double>(n)) /
                                      static_cast<double>(n));
      std::vector<double> x(n), y(n);
      for (NodeId v = 0; v < n; ++v) {
        x[v] = rng.next_double();
        y[v] = rng.next_double();
      }
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) {
          double dx = x[u] - x[v], dy = y[u] - y[v];
          if (dx * dx + dy * dy <= radius * radius)
            g.add_edge(u, v, draw_weight(p, p.wmax, rng));
        }
      break;
    }
    case GraphKind::kBlobChain: {
      // Dense light-weight blobs joined by heavy chain edges: distances inside
      // a blob are tiny, distances across the chain span many binary scales.
      NodeId blob = p.blob_size;
      if (blob == 0) {
        blob = static_cast<NodeId>(
            2 * static_cast<NodeId>(std::ceil(std::sqrt(static_cast<double>(n)))));
      }
      blob = std::min<NodeId>(std::max<NodeId>(blob, 2), n);
      NodeId nblobs = (n + blob - 1) / blob;
      auto blob_of = [&](NodeId v) { return v / blob; };
      // Ring inside each blob for guaranteed connectivity, plus random chords.
      for (NodeId b = 0; b < nblobs; ++b) {
        NodeId lo = b * blob, hi = std::min<NodeId>(n, lo + blob);
        NodeId sz = hi - lo;
        if (sz == 1) continue;
        for (NodeId v = lo; v + 1 < hi; ++v)
          g.add_edge(v, v + 1, rng.uniform_i64(1, 4));
        if (sz > 2) g.add_edge(hi - 1, lo, rng.uniform_i64(1, 4));
        for (NodeId u = lo; u < hi; ++u)
          for (NodeId v = u + 2; v < hi; ++v) {
            if ((u == lo && v == hi - 1)) continue;  // ring edge already there
            if (rng.chance(0.25)) g.add_edge(u, v, rng.uniform_i64(1, 4));
          }
      }
      // Chain edges between blob representatives, log-uniform heavy weights.
      Weight heavy_lo = 8 * static_cast<Weight>(blob);
      Weight heavy_hi = std::min<Weight>(heavy_lo * static_cast<Weight>(n),
                                         static_cast<Weight>(n) * n * blob);
      GenParams heavy = p;
      heavy.weights = WeightStyle::kLogUniform;
      heavy.wmin = heavy_lo;
      for (NodeId b = 0; b + 1 < nblobs; ++b) {
        NodeId u = b * blob;
        NodeId v = (b + 1) * blob;
        g.add_edge(u, v, draw_weight(heavy, heavy_hi, rng));
      }
      (void)blob_of;
      break;
    }
  }
  if (p.largest_component) g = largest_component_of(g);
  return g;
}

}  // namespace hopset
