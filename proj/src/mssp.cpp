#include "hopset/mssp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace hopset {

namespace {

// One hop-limited Bellman-Ford source as a message-passing program.  Nodes
// that improved in the previous round announce their distance; neighbors
// relax using their locally known incident weights.
class LimitedBfProgram final : public NodeProgram {
 public:
  LimitedBfProgram(const WeightedGraph& g, NodeId source, std::int64_t ell)
      : g_(g), ell_(ell) {
    dist_.assign(g.num_nodes(), kInf);
    dist_[source] = 0;
    pending_ = {source};
    in_pending_.assign(g.num_nodes(), 0);
    in_pending_[source] = 1;
  }

  void receive(NodeId u, std::int64_t, std::span<const Word> inbox) override {
    // Words carry "your distance via me", i.e. sender distance plus edge
    // weight, so the receiver only takes a min.
    Weight best = kInf;
    for (const Word& w : inbox) best = std::min(best, w.value);
    if (best < dist_[u]) {
      dist_[u] = best;
      if (!in_pending_[u]) {
        in_pending_[u] = 1;
        pending_.push_back(u);
      }
    }
  }

  void collect_senders(std::int64_t round, std::vector<NodeId>& out) override {
    if (round >= ell_) {  // a word sent at round t lands after t+1 hops
      pending_.clear();
      std::fill(in_pending_.begin(), in_pending_.end(), 0);
      return;
    }
    std::sort(pending_.begin(), pending_.end());
    out = pending_;
    pending_.clear();
    std::fill(in_pending_.begin(), in_pending_.end(), 0);
  }

  void send(NodeId u, std::int64_t, WordSink& sink) override {
    // Requires a graph without parallel edges (one word per pair per round).
    for (const Arc& a : g_.neighbors(u)) sink.send(u, a.to, u, dist_[u] + a.w);
  }

  bool quiescent() const override { return pending_.empty(); }

  const std::vector<Weight>& dist() const { return dist_; }

 private:
  const WeightedGraph& g_;
  std::int64_t ell_;
  std::vector<Weight> dist_;
  std::vector<NodeId> pending_;
  std::vector<char> in_pending_;
};

}  // namespace

std::vector<std::vector<Weight>> limited_bf_streams(
    const WeightedGraph& g, std::span<const NodeId> sources, std::int64_t ell,
    Simulator& sim, const std::string& label, std::int64_t extra_rounds,
    std::int64_t* rounds_out) {
  std::vector<std::unique_ptr<LimitedBfProgram>> programs;
  std::vector<NodeProgram*> streams;
  for (NodeId s : sources) {
    programs.push_back(std::make_unique<LimitedBfProgram>(g, s, ell));
    streams.push_back(programs.back().get());
  }
  PhaseOutcome o = sim.run_multiplexed(label, streams, ell + 1,
                                       /*budget_is_cutoff=*/true, extra_rounds);
  if (rounds_out != nullptr) *rounds_out = o.rounds;
  std::vector<std::vector<Weight>> out;
  out.reserve(sources.size());
  for (auto& p : programs) out.push_back(p->dist());
  return out;
}

QueryResult mssp_query(const WeightedGraph& g, std::span<const Edge> hopset,
                       std::span<const NodeId> sources, std::int64_t beta,
                       const MsspConfig& cfg, Simulator* sim) {
  const NodeId n = g.num_nodes();
  if (beta < 0) throw std::invalid_argument("mssp_query: beta must be >= 0");
  double cap = cfg.source_budget_factor * std::sqrt(static_cast<double>(n));
  if (static_cast<double>(sources.size()) > cap)
    throw std::invalid_argument(
        "mssp_query: too many sources (" + std::to_string(sources.size()) +
        " > " + std::to_string(static_cast<std::int64_t>(cap)) + ")");
  for (NodeId s : sources)
    if (s >= n) throw std::invalid_argument("mssp_query: source out of range");

  WeightedGraph aug = augment_min(g, hopset);
  QueryResult out;
  out.sources.assign(sources.begin(), sources.end());
  for (NodeId s : sources) {
    std::vector<NodeId> one{s};
    out.estimate.push_back(bellman_ford_limited(aug, one, beta).dist);
  }
  if (cfg.use_simulator && sim != nullptr) {
    std::int64_t rounds = 0;
    auto simulated = limited_bf_streams(
        aug, sources, beta, *sim, "mssp_query",
        static_cast<std::int64_t>(sources.size()), &rounds);
    if (simulated != out.estimate)
      throw std::logic_error("mssp_query: simulator and direct sweep disagree");
    out.rounds = rounds;
  }
  return out;
}

}  // namespace hopset
