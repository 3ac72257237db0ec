#include "hopset/ldd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "hopset/oracles.hpp"

namespace hopset {

ShiftAssignment draw_shifts(NodeId n, double alpha, Rng& rng) {
  if (alpha <= 0) throw std::invalid_argument("draw_shifts: alpha must be positive");
  ShiftAssignment s;
  s.r.resize(n);
  s.r_fp.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    s.r[v] = rng.exponential(alpha);
    s.r_fp[v] = static_cast<std::int64_t>(
        std::llround(s.r[v] * static_cast<double>(ShiftAssignment::kOne)));
    s.max_fp = std::max(s.max_fp, s.r_fp[v]);
  }
  return s;
}

namespace {

// Lexicographic candidate order: larger residual wins, then smaller center.
inline bool better(std::int64_t s, NodeId c, std::int64_t cur_s, NodeId cur_c) {
  return s > cur_s || (s == cur_s && c < cur_c);
}

class LddProgram final : public NodeProgram {
 public:
  LddProgram(const WeightedGraph& g, const ShiftAssignment& shifts)
      : g_(g), n_(g.num_nodes()) {
    best_s_.resize(n_);
    best_center_.resize(n_);
    parent_.resize(n_);
    pending_.reserve(n_);
    in_pending_.assign(n_, 1);
    for (NodeId v = 0; v < n_; ++v) {
      best_s_[v] = shifts.r_fp[v];
      best_center_[v] = v;
      parent_[v] = v;
      pending_.push_back(v);
    }
  }

  void receive(NodeId u, std::int64_t, std::span<const Word> inbox) override {
    for (const Word& w : inbox) {
      if (better(w.value, w.tag, best_s_[u], best_center_[u])) {
        best_s_[u] = w.value;
        best_center_[u] = w.tag;
        parent_[u] = w.src;
        if (!in_pending_[u]) {
          in_pending_[u] = 1;
          pending_.push_back(u);
        }
      }
    }
  }

  void collect_senders(std::int64_t, std::vector<NodeId>& out) override {
    std::sort(pending_.begin(), pending_.end());
    out = pending_;
    pending_.clear();
    std::fill(in_pending_.begin(), in_pending_.end(), 0);
  }

  void send(NodeId u, std::int64_t, WordSink& sink) override {
    for (const Arc& a : g_.neighbors(u)) {
      std::int64_t s = best_s_[u] - a.w * ShiftAssignment::kOne;
      // A residual that went negative can never beat the receiver's own
      // candidacy (its own residual is >= 0), so it is pruned here.
      if (s >= 0) sink.send(u, a.to, best_center_[u], s);
    }
  }

  bool quiescent() const override { return pending_.empty(); }

  const std::vector<std::int64_t>& best_s() const { return best_s_; }
  const std::vector<NodeId>& best_center() const { return best_center_; }
  const std::vector<NodeId>& parent() const { return parent_; }

 private:
  const WeightedGraph& g_;
  NodeId n_;
  std::vector<std::int64_t> best_s_;
  std::vector<NodeId> best_center_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> pending_;
  std::vector<char> in_pending_;
};

Partition assemble(const WeightedGraph&, const ShiftAssignment& shifts,
                   const std::vector<std::int64_t>& best_s,
                   const std::vector<NodeId>& best_center,
                   const std::vector<NodeId>& parent, std::int64_t rounds) {
  Partition p;
  p.center = best_center;
  p.residual_fp = best_s;
  p.parent = parent;
  p.rounds = rounds;
  p.dist_to_center.resize(best_s.size());
  for (std::size_t v = 0; v < best_s.size(); ++v) {
    std::int64_t num = shifts.r_fp[best_center[v]] - best_s[v];
    // The residual is r_fp[center] minus a whole number of weight units.
    if (num < 0 || (num & (ShiftAssignment::kOne - 1)) != 0)
      throw std::logic_error("ldd: residual is not an integral distance");
    p.dist_to_center[v] = num >> ShiftAssignment::kFracBits;
  }
  return p;
}

}  // namespace

Partition ldd_partition(const WeightedGraph& g, const ShiftAssignment& shifts,
                        Simulator& sim, const std::string& label) {
  LddProgram prog(g, shifts);
  PhaseOutcome out = sim.run_phase(label, prog, shifts.max_rounds() + 1,
                                   /*budget_is_cutoff=*/true);
  return assemble(g, shifts, prog.best_s(), prog.best_center(), prog.parent(),
                  out.rounds);
}

Partition ldd_partition_centralized(const WeightedGraph& g,
                                    const ShiftAssignment& shifts) {
  const NodeId n = g.num_nodes();
  // Multi-source Dijkstra on cost(v) = d(v,x)*2^20 - r_fp[x], which is the
  // negated residual; popping (cost, center) in lexicographic order applies
  // exactly the distributed tie-break.
  struct Item {
    std::int64_t cost;
    NodeId center;
    NodeId node;
    bool operator>(const Item& o) const {
      if (cost != o.cost) return cost > o.cost;
      if (center != o.center) return center > o.center;
      return node > o.node;
    }
  };
  std::vector<std::int64_t> cost(n);
  std::vector<NodeId> center(n);
  std::vector<char> settled(n, 0);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (NodeId v = 0; v < n; ++v) {
    cost[v] = -shifts.r_fp[v];
    center[v] = v;
    pq.push({cost[v], v, v});
  }
  while (!pq.empty()) {
    Item it = pq.top();
    pq.pop();
    if (settled[it.node] || it.cost != cost[it.node] ||
        it.center != center[it.node])
      continue;
    settled[it.node] = 1;
    for (const Arc& a : g.neighbors(it.node)) {
      std::int64_t nc = it.cost + a.w * ShiftAssignment::kOne;
      if (!settled[a.to] &&
          (nc < cost[a.to] || (nc == cost[a.to] && it.center < center[a.to]))) {
        cost[a.to] = nc;
        center[a.to] = it.center;
        pq.push({nc, it.center, a.to});
      }
    }
  }
  std::vector<std::int64_t> best_s(n);
  for (NodeId v = 0; v < n; ++v) best_s[v] = -cost[v];
  return assemble(g, shifts, best_s, center, center /*parents unused*/, 0);
}

Cover limited_pairwise_cover(const WeightedGraph& g, std::int64_t W,
                             std::int64_t ell, Rational eps0, int reps,
                             Simulator& sim, const std::string& label) {
  if (W < 1 || ell < 1)
    throw std::invalid_argument("limited_pairwise_cover: W and ell must be >= 1");
  const NodeId n = g.num_nodes();
  if (reps <= 0) reps = default_reps(n);

  Cover cover;
  cover.W = W;
  cover.ell = ell;
  cover.eps0 = eps0;
  cover.reps = reps;
  RoundedGraph rg = round_weights(g, W, ell, eps0);
  cover.eta_num = rg.eta_num;
  cover.eta_den = rg.eta_den;
  cover.node_clusters.assign(n, {});

  double alpha = (static_cast<double>(eps0.num) / static_cast<double>(eps0.den)) /
                 (2.0 * static_cast<double>(ell));

  std::vector<ShiftAssignment> shifts(reps);
  std::vector<std::unique_ptr<LddProgram>> programs;
  std::vector<NodeProgram*> streams;
  std::int64_t budget = 0;
  for (int rep = 0; rep < reps; ++rep) {
    ShiftAssignment& s = shifts[rep];
    s.r.resize(n);
    s.r_fp.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      Rng r = sim.per_node_rng(v, label + "/shift" + std::to_string(rep));
      s.r[v] = r.exponential(alpha);
      s.r_fp[v] = static_cast<std::int64_t>(
          std::llround(s.r[v] * static_cast<double>(ShiftAssignment::kOne)));
      s.max_fp = std::max(s.max_fp, s.r_fp[v]);
    }
    budget = std::max(budget, s.max_rounds() + 1);
    programs.push_back(std::make_unique<LddProgram>(rg.rounded, s));
    streams.push_back(programs.back().get());
  }

  PhaseOutcome out = sim.run_multiplexed(label, streams, budget,
                                         /*budget_is_cutoff=*/true);
  cover.rounds = out.rounds;

  for (int rep = 0; rep < reps; ++rep) {
    Partition part = assemble(rg.rounded, shifts[rep], programs[rep]->best_s(),
                              programs[rep]->best_center(),
                              programs[rep]->parent(), 0);
    std::map<NodeId, std::vector<NodeId>> by_center;
    for (NodeId v = 0; v < n; ++v) by_center[part.center[v]].push_back(v);
    for (auto& [c, members] : by_center) {
      Cluster cl;
      cl.id = static_cast<int>(cover.clusters.size());
      cl.rep = rep;
      cl.center = c;
      std::sort(members.begin(), members.end());
      cl.members = members;
      for (NodeId v : members) {
        cl.member_dist.push_back(part.dist_to_center[v]);
        cl.member_parent.push_back(part.parent[v]);
        cover.node_clusters[v].push_back(cl.id);
      }
      cover.clusters.push_back(std::move(cl));
    }
  }
  return cover;
}

std::vector<std::string> validate_cover(const Cover& cover, NodeId n) {
  std::vector<std::string> bad;
  std::vector<std::vector<int>> seen_in_rep(cover.reps,
                                            std::vector<int>(n, 0));
  for (const Cluster& cl : cover.clusters) {
    if (cl.members.empty()) {
      bad.push_back("cluster " + std::to_string(cl.id) + " is empty");
      continue;
    }
    if (!std::binary_search(cl.members.begin(), cl.members.end(), cl.center))
      bad.push_back("cluster " + std::to_string(cl.id) +
                    " does not contain its center");
    std::vector<int> local(n, -1);
    for (std::size_t i = 0; i < cl.members.size(); ++i)
      local[cl.members[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < cl.members.size(); ++i) {
      NodeId v = cl.members[i];
      ++seen_in_rep[cl.rep][v];
      NodeId p = cl.member_parent[i];
      if (local[p] < 0) {
        bad.push_back("cluster " + std::to_string(cl.id) + ": parent of " +
                      std::to_string(v) + " is outside the cluster");
        continue;
      }
      // Walk the flood tree; it must reach the center within |members| steps.
      NodeId cur = v;
      std::size_t steps = 0;
      while (cur != cl.center && steps <= cl.members.size()) {
        cur = cl.member_parent[local[cur]];
        if (local[cur] < 0) break;
        ++steps;
      }
      if (cur != cl.center)
        bad.push_back("cluster " + std::to_string(cl.id) + ": member " +
                      std::to_string(v) + " is not connected to the center");
    }
  }
  for (int rep = 0; rep < cover.reps; ++rep)
    for (NodeId v = 0; v < n; ++v)
      if (seen_in_rep[rep][v] != 1)
        bad.push_back("repetition " + std::to_string(rep) + ": node " +
                      std::to_string(v) + " appears in " +
                      std::to_string(seen_in_rep[rep][v]) + " clusters");
  for (NodeId v = 0; v < n; ++v)
    if (cover.node_clusters[v].size() > static_cast<std::size_t>(cover.reps))
      bad.push_back("node " + std::to_string(v) + " overlaps " +
                    std::to_string(cover.node_clusters[v].size()) +
                    " clusters (max " + std::to_string(cover.reps) + ")");
  return bad;
}

void write_cover(std::ostream& out, const Cover& cover) {
  for (const Cluster& cl : cover.clusters) {
    out << "cluster " << cl.id << " center " << cl.center << " scaleW "
        << cover.W << " members";
    for (NodeId v : cl.members) out << ' ' << v;
    out << '\n';
  }
}

PaddingReport padding_probability_check(const WeightedGraph& g, double alpha,
                                        Weight r, int trials,
                                        std::uint64_t seed) {
  const NodeId n = g.num_nodes();
  PaddingReport rep;
  rep.bound = std::exp(-2.0 * static_cast<double>(r) * alpha);
  rep.trials = trials;
  rep.freq.assign(n, 0.0);
  auto dist = all_pairs_dijkstra(g);
  std::vector<std::vector<NodeId>> ball(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (dist[u][v] <= r) ball[u].push_back(v);
  Rng rng(seed ^ 0x7f4a7c159e3779b9ULL);
  std::vector<int> intact(n, 0);
  for (int t = 0; t < trials; ++t) {
    Rng trial = rng.split(static_cast<std::uint64_t>(t));
    ShiftAssignment shifts = draw_shifts(n, alpha, trial);
    Partition part = ldd_partition_centralized(g, shifts);
    for (NodeId u = 0; u < n; ++u) {
      bool ok = true;
      NodeId c = part.center[u];
      for (NodeId v : ball[u])
        if (part.center[v] != c) {
          ok = false;
          break;
        }
      intact[u] += ok;
    }
  }
  for (NodeId u = 0; u < n; ++u)
    rep.freq[u] = static_cast<double>(intact[u]) / static_cast<double>(trials);
  return rep;
}

}  // namespace hopset
