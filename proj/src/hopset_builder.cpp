#include "hopset/hopset_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "hopset/mssp.hpp"
#include "hopset/oracles.hpp"

namespace hopset {

namespace {

using PairKey = std::pair<NodeId, NodeId>;

PairKey key_of(NodeId a, NodeId b) {
  return a < b ? PairKey{a, b} : PairKey{b, a};
}

std::vector<Edge> edges_of(const std::map<PairKey, Weight>& m) {
  std::vector<Edge> out;
  out.reserve(m.size());
  for (const auto& [p, w] : m) out.push_back({p.first, p.second, w});
  return out;
}

void merge_min(std::map<PairKey, Weight>& m, NodeId a, NodeId b, Weight w) {
  auto [it, inserted] = m.emplace(key_of(a, b), w);
  if (!inserted && w < it->second) it->second = w;
}

// Max over all components of the distance from the smallest-id node of the
// component; at least half the weighted diameter, so 2^ceil(log2(2*ecc))
// always covers the largest finite distance.
Weight eccentricity_lower_bound(const WeightedGraph& g) {
  const NodeId n = g.num_nodes();
  std::vector<char> seen(n, 0);
  Weight ecc = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    auto dm = dijkstra(g, {s});
    for (NodeId v = 0; v < n; ++v) {
      if (dm.dist[v] >= kInf) continue;
      seen[v] = 1;
      ecc = std::max(ecc, dm.dist[v]);
    }
  }
  return ecc;
}

// Shortcut edges for all small clusters of one repetition: topology up to the
// center over constant-round routing, local shortcuts back down.  Returns the
// edges (global ids) and the largest measured local hop bound.
struct SmallClusterOutcome {
  std::vector<Edge> edges;
  int max_beta_prime = 0;
};

SmallClusterOutcome process_small_clusters(
    const WeightedGraph& aug, const std::vector<const Cluster*>& clusters,
    const HopsetConfig& cfg, double eps_prime, Simulator& sim,
    const std::string& label) {
  SmallClusterOutcome out;
  if (clusters.empty()) return out;

  // Membership lookup: after the decomposition flood every node has heard the
  // final (shift, center) of each neighbor, so an endpoint can tell whether a
  // neighbor shares its cluster.  The smaller endpoint ships each internal
  // edge; edges touching the center need no message at all.
  const NodeId n = aug.num_nodes();
  std::vector<std::int32_t> cluster_of(n, -1);
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (NodeId v : clusters[i]->members)
      cluster_of[v] = static_cast<std::int32_t>(i);

  std::vector<RouteMessage> up;
  for (const Cluster* c : clusters) {
    for (NodeId u : c->members) {
      if (u == c->center) continue;
      for (const Arc& a : aug.neighbors(u)) {
        if (a.to <= u || a.to == c->center) continue;
        if (cluster_of[a.to] != cluster_of[u]) continue;
        up.push_back({u, c->center, a.to, a.w});
      }
    }
  }
  auto delivered = sim.lenzen_route(label + "/up", up);

  std::vector<RouteMessage> down;
  std::vector<NodeId> local_id(n, 0);  // valid only at current members
  for (const Cluster* c : clusters) {
    const auto& members = c->members;  // sorted
    const NodeId s = static_cast<NodeId>(members.size());
    for (NodeId i = 0; i < s; ++i) local_id[members[i]] = i;

    WeightedGraph sub(s);
    std::map<PairKey, Weight> sub_edges;
    for (const Word& w : delivered[c->center]) {
      if (cluster_of[w.src] != cluster_of[c->center]) continue;  // other reps
      merge_min(sub_edges, local_id[w.src], local_id[w.tag], w.value);
    }
    for (const Arc& a : aug.neighbors(c->center)) {
      if (cluster_of[a.to] != cluster_of[c->center]) continue;
      merge_min(sub_edges, local_id[c->center], local_id[a.to], a.w);
    }
    for (const auto& [p, w] : sub_edges) sub.add_edge(p.first, p.second, w);

    Rng lrng = sim.per_node_rng(c->center, label + "/local");
    LocalHopsetResult local =
        build_local_hopset(sub, cfg.k, eps_prime, cfg.local_mode, lrng);
    out.max_beta_prime = std::max(out.max_beta_prime, local.beta_prime);

    for (const Edge& e : local.edges) {
      const NodeId gu = members[e.u], gv = members[e.v];
      out.edges.push_back({gu, gv, e.w});
      if (gu != c->center) down.push_back({c->center, gu, gv, e.w});
      if (gv != c->center) down.push_back({c->center, gv, gu, e.w});
    }
  }
  sim.lenzen_route(label + "/down", down);
  return out;
}

}  // namespace

BuildResult build_hopset(const WeightedGraph& g, const HopsetConfig& cfg,
                         std::uint64_t seed) {
  if (cfg.eps <= 0 || cfg.eps > 8)
    throw std::invalid_argument("build_hopset: eps must be in (0, 8]");
  if (cfg.k < 2) throw std::invalid_argument("build_hopset: k must be >= 2");
  if (cfg.mu <= 0 || cfg.mu > 1)
    throw std::invalid_argument("build_hopset: mu must be in (0, 1]");
  if (cfg.cW <= 0 || cfg.c2 < 1 || cfg.cover_c1 <= 0 || cfg.min_scale_R < 1)
    throw std::invalid_argument("build_hopset: bad constants");
  if (cfg.beta_cap < 0)
    throw std::invalid_argument("build_hopset: beta_cap must be >= 0");

  const NodeId n = g.num_nodes();
  BuildResult res;
  res.eps = cfg.eps;
  res.hopset.n = n;
  if (n < 2 || g.num_edges() == 0) return res;

  SimConfig sc;
  sc.model = SimModel::kClique;
  sc.seed = seed;
  sc.log_traffic = cfg.log_traffic;
  Simulator sim(sc, n);

  const double log2n = std::log2(static_cast<double>(std::max<NodeId>(n, 2)));
  const double lnn = std::log(static_cast<double>(std::max<NodeId>(n, 2)));
  res.reps = default_reps(n, cfg.cover_c1);
  res.big_threshold = static_cast<NodeId>(
      std::ceil(std::pow(static_cast<double>(n), cfg.mu)));

  // Exploration limit: odd, at least 3 (when n allows), at most n-1.
  std::int64_t ell = cfg.beta_cap > 0
                         ? 2 * static_cast<std::int64_t>(cfg.beta_cap) + 1
                         : static_cast<std::int64_t>(n) - 1;
  ell = std::min<std::int64_t>(ell, static_cast<std::int64_t>(n) - 1);
  if (ell % 2 == 0) --ell;
  ell = std::max<std::int64_t>(ell, 1);
  if (n >= 4) ell = std::max<std::int64_t>(ell, 3);

  const Weight ecc = eccentricity_lower_bound(g);
  if (ecc == 0) return res;

  int kappa_min = 0;
  while ((std::int64_t{1} << kappa_min) < cfg.min_scale_R) ++kappa_min;
  int kappa_max = kappa_min;
  while ((std::int64_t{1} << kappa_max) < 2 * ecc) ++kappa_max;

  // Per-scale budget, lowered until the compounded stretch fits eps overall.
  const int num_scales = kappa_max - kappa_min + 1;
  double eps_prime = cfg.eps / (cfg.c2 * log2n);
  while (num_scales * std::log1p(eps_prime) > std::log1p(cfg.eps))
    eps_prime *= 0.5;
  res.eps_prime = eps_prime;

  std::map<PairKey, Weight> accum;  // all shortcut edges so far, min weight
  for (int kappa = kappa_min; kappa <= kappa_max; ++kappa) {
    const std::int64_t R = std::int64_t{1} << kappa;
    const std::int64_t W = std::max<std::int64_t>(
        1, std::llround(cfg.cW * eps_prime * static_cast<double>(R) / lnn));

    ScaleStats st;
    st.kappa = kappa;
    st.R = R;
    st.W = W;
    st.ell = ell;

    const WeightedGraph aug = augment_min(g, edges_of(accum));
    const std::string pre = "s" + std::to_string(kappa);
    const std::int64_t rounds_before = sim.ledger().total_rounds();

    Cover cover = limited_pairwise_cover(aug, W, ell, cfg.cover_eps0, res.reps,
                                         sim, pre + "/cover");
    st.cover_violations =
        static_cast<std::int64_t>(validate_cover(cover, n).size());
    st.clusters = static_cast<int>(cover.clusters.size());

    std::map<PairKey, Weight> scale_edges;
    std::set<NodeId> big_centers;
    std::vector<const Cluster*> big;
    for (int rep = 0; rep < res.reps; ++rep) {
      std::vector<const Cluster*> small;
      for (const Cluster& c : cover.clusters) {
        if (c.rep != rep) continue;
        if (c.members.size() >= res.big_threshold) {
          big.push_back(&c);
          big_centers.insert(c.center);
        } else if (c.members.size() >= 2) {
          small.push_back(&c);
        }
      }
      st.small_clusters += static_cast<int>(small.size());
      if (small.empty()) continue;
      SmallClusterOutcome sc_out = process_small_clusters(
          aug, small, cfg, eps_prime, sim,
          pre + "/small" + std::to_string(rep));
      st.max_beta_prime = std::max(st.max_beta_prime, sc_out.max_beta_prime);
      for (const Edge& e : sc_out.edges) merge_min(scale_edges, e.u, e.v, e.w);
    }
    st.big_clusters = static_cast<int>(big.size());
    st.big_centers = static_cast<int>(big_centers.size());

    if (!big_centers.empty()) {
      // One pipelined batch of hop-limited searches from the deduplicated
      // center set serves both the member stars and the center-to-center
      // edges; the charge is the slowest stream plus one staggering round
      // per source.
      const std::vector<NodeId> centers(big_centers.begin(), big_centers.end());
      auto dists = limited_bf_streams(
          aug, centers, ell, sim, pre + "/mssp",
          static_cast<std::int64_t>(centers.size()), nullptr);
      std::map<NodeId, std::size_t> idx;
      for (std::size_t i = 0; i < centers.size(); ++i) idx[centers[i]] = i;

      for (const Cluster* c : big) {
        const auto& dc = dists[idx[c->center]];
        for (NodeId v : c->members) {
          if (v == c->center || dc[v] >= kInf) continue;
          merge_min(scale_edges, c->center, v, dc[v]);
        }
      }
      for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
          const Weight d = dists[i][centers[j]];
          if (d < kInf) merge_min(scale_edges, centers[i], centers[j], d);
        }
    }

    // Keep only edges that actually improve on the graph the scale saw.
    std::vector<Edge> kept;
    for (const auto& [p, w] : scale_edges) {
      bool redundant = false;
      for (const Arc& a : aug.neighbors(p.first))
        if (a.to == p.second && a.w <= w) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back({p.first, p.second, w});
    }
    for (const Edge& e : kept) merge_min(accum, e.u, e.v, e.w);
    st.edges_added = static_cast<std::int64_t>(kept.size());
    if (!kept.empty()) res.hopset.per_scale[kappa] = std::move(kept);
    st.rounds = sim.ledger().total_rounds() - rounds_before;
    res.scales.push_back(st);
  }

  res.hopset.edges = edges_of(accum);
  res.total_rounds = sim.ledger().total_rounds();
  res.total_words = sim.ledger().total_words();
  res.violations =
      static_cast<std::int64_t>(sim.ledger().violations().size());
  res.ledger = sim.ledger();
  return res;
}

bool within_stretch(Weight est, Weight d, double eps) {
  if (est <= d) return true;
  if (d >= kInf || est >= kInf) return d >= kInf && est >= kInf;
  if (eps <= 0) return false;  // est > d already
  // eps == mant * 2^(e2-53) exactly; est <= d*(1+eps) becomes
  // (est-d) <= floor(d * mant / 2^(53-e2)), exact for nonnegative integers.
  int e2 = 0;
  const double frac = std::frexp(eps, &e2);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  const int sh = 53 - e2;
  const unsigned __int128 gap = static_cast<unsigned __int128>(est - d);
  unsigned __int128 rhs =
      static_cast<unsigned __int128>(d) * static_cast<unsigned __int128>(mant);
  if (sh >= 0) {
    if (sh > 120) return false;  // eps below any representable slack
    return gap <= (rhs >> sh);
  }
  const int up = -sh;
  if (up >= 64 || (rhs >> (127 - up)) != 0) return true;  // slack exceeds range
  return gap <= (rhs << up);
}

int measure_hopbound(const WeightedGraph& g, std::span<const Edge> hopset,
                     double eps,
                     const std::vector<std::vector<Weight>>* exact) {
  const NodeId n = g.num_nodes();
  if (n == 0) return 1;
  std::vector<std::vector<Weight>> own;
  if (exact == nullptr) {
    own = all_pairs_dijkstra(g);
    exact = &own;
  }
  const WeightedGraph aug = augment_min(g, hopset);

  int beta = 1;
  std::vector<Weight> cur(n), next(n);
  for (NodeId s = 0; s < n; ++s) {
    const auto& drow = (*exact)[s];
    std::fill(cur.begin(), cur.end(), kInf);
    cur[s] = 0;
    auto all_within = [&]() {
      for (NodeId v = 0; v < n; ++v) {
        if (drow[v] >= kInf) continue;
        if (cur[v] < drow[v]) return false;  // an edge undercuts a distance
        if (!within_stretch(cur[v], drow[v], eps)) return false;
      }
      return true;
    };
    int h = 0;
    while (!all_within()) {
      if (h >= static_cast<int>(n)) return kNoHops;  // no budget ever works
      next = cur;
      for (NodeId u = 0; u < n; ++u) {
        if (cur[u] >= kInf) continue;
        for (const Arc& a : aug.neighbors(u))
          next[a.to] = std::min(next[a.to], cur[u] + a.w);
      }
      cur.swap(next);
      ++h;
    }
    beta = std::max(beta, std::max(h, 1));
  }
  return beta;
}

SizeReport size_report(const Hopset& h, int k) {
  SizeReport rep;
  rep.edges = static_cast<std::int64_t>(h.edges.size());
  const double n = static_cast<double>(std::max<NodeId>(h.n, 2));
  const double lg = std::log2(n);
  rep.normalizer =
      std::pow(n, 1.0 + 1.0 / (2.0 * static_cast<double>(k))) * lg +
      n * lg * lg;
  rep.ratio = static_cast<double>(rep.edges) / rep.normalizer;
  for (const auto& [kappa, edges] : h.per_scale)
    rep.per_scale[kappa] = static_cast<std::int64_t>(edges.size());
  return rep;
}

void write_hopset_dump(std::ostream& out, const Hopset& h) {
  for (const auto& [kappa, edges] : h.per_scale) {
    std::vector<Edge> sorted(edges);
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
    });
    for (const Edge& e : sorted)
      out << e.u << ' ' << e.v << ' ' << e.w << ' ' << kappa << '\n';
  }
}

void write_scale_stats_jsonl(std::ostream& out, const BuildResult& r) {
  for (const ScaleStats& s : r.scales) {
    out << "{\"kappa\":" << s.kappa << ",\"R\":" << s.R << ",\"W\":" << s.W
        << ",\"ell\":" << s.ell << ",\"clusters\":" << s.clusters
        << ",\"small_clusters\":" << s.small_clusters
        << ",\"big_clusters\":" << s.big_clusters
        << ",\"big_centers\":" << s.big_centers
        << ",\"max_beta_prime\":" << s.max_beta_prime
        << ",\"edges_added\":" << s.edges_added << ",\"rounds\":" << s.rounds
        << ",\"cover_violations\":" << s.cover_violations << "}\n";
  }
}

}  // namespace hopset
