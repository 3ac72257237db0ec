#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/mssp.hpp"
#include "hopset/sim.hpp"

using namespace hopset;

namespace {

// Node `origin` sends one word to every other node in round 0.
class BroadcastProgram : public NodeProgram {
 public:
  BroadcastProgram(NodeId origin, NodeId n) : origin_(origin), n_(n) {}
  void receive(NodeId, std::int64_t, std::span<const Word>) override {}
  void collect_senders(std::int64_t, std::vector<NodeId>& out) override {
    if (!sent_) out.push_back(origin_);
  }
  void send(NodeId u, std::int64_t, WordSink& sink) override {
    for (NodeId v = 0; v < n_; ++v)
      if (v != u) sink.send(u, v, u, 1);
    sent_ = true;
  }
  bool quiescent() const override { return sent_; }

 private:
  NodeId origin_, n_;
  bool sent_ = false;
};

// Forwards a token away from the node it arrived from (graph edges only).
class TokenFlood : public NodeProgram {
 public:
  TokenFlood(const WeightedGraph& g, NodeId start)
      : g_(&g), has_(g.num_nodes(), 0) {
    has_[start] = 1;
    to_send_[start] = start;  // the start "arrived from" itself
  }
  void receive(NodeId u, std::int64_t, std::span<const Word> inbox) override {
    if (!has_[u]) {
      has_[u] = 1;
      to_send_[u] = inbox.front().src;
    }
  }
  void collect_senders(std::int64_t, std::vector<NodeId>& out) override {
    for (const auto& kv : to_send_) out.push_back(kv.first);
  }
  void send(NodeId u, std::int64_t, WordSink& sink) override {
    const NodeId from = to_send_.at(u);
    for (const Arc& a : g_->neighbors(u))
      if (a.to != from || u == from) sink.send(u, a.to, u, 1);
    to_send_.erase(u);
  }
  bool quiescent() const override { return to_send_.empty(); }

 private:
  const WeightedGraph* g_;
  std::vector<char> has_;
  std::map<NodeId, NodeId> to_send_;  // node -> neighbor it arrived from
};

// Node 1 sends one word to node 2 in round 0; node 2 records arrival round.
class OneShotProbe : public NodeProgram {
 public:
  void receive(NodeId u, std::int64_t round, std::span<const Word>) override {
    if (u == 2 && arrival_ < 0) arrival_ = round;
  }
  void collect_senders(std::int64_t round, std::vector<NodeId>& out) override {
    if (round == 0) out.push_back(1);
  }
  void send(NodeId u, std::int64_t, WordSink& sink) override {
    sink.send(u, 2, u, 7);
  }
  bool quiescent() const override { return arrival_ >= 0; }

  std::int64_t arrival() const { return arrival_; }

 private:
  std::int64_t arrival_ = -1;
};

// Sends two words to the same destination in one round (bandwidth breach).
class DoubleSender : public NodeProgram {
 public:
  void receive(NodeId, std::int64_t, std::span<const Word>) override {}
  void collect_senders(std::int64_t round, std::vector<NodeId>& out) override {
    if (round == 0) out.push_back(0);
  }
  void send(NodeId u, std::int64_t, WordSink& sink) override {
    sink.send(u, 1, 0, 1);
    sink.send(u, 1, 1, 2);
  }
  bool quiescent() const override { return false; }
};

// Sends along a pair that is not a graph edge (CONGEST breach).
class NonEdgeSender : public NodeProgram {
 public:
  void receive(NodeId, std::int64_t, std::span<const Word>) override {}
  void collect_senders(std::int64_t round, std::vector<NodeId>& out) override {
    if (round == 0) out.push_back(0);
  }
  void send(NodeId u, std::int64_t, WordSink& sink) override {
    sink.send(u, 2, 0, 1);
  }
  bool quiescent() const override { return false; }
};

// Never stops sending; used to exercise round budgets.
class ChatterBox : public NodeProgram {
 public:
  void receive(NodeId, std::int64_t, std::span<const Word>) override {}
  void collect_senders(std::int64_t, std::vector<NodeId>& out) override {
    out.push_back(0);
  }
  void send(NodeId u, std::int64_t round, WordSink& sink) override {
    sink.send(u, 1, 0, round);
  }
  bool quiescent() const override { return false; }
};

SimConfig clique_cfg(std::uint64_t seed = 0) {
  SimConfig cfg;
  cfg.model = SimModel::kClique;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("broadcast in the clique: one round, n-1 words") {
  const NodeId n = 16;
  Simulator sim(clique_cfg(), n);
  BroadcastProgram prog(0, n);
  const auto outcome = sim.run_phase("broadcast", prog, 10);
  CHECK(outcome.rounds == 1);
  CHECK(outcome.words == n - 1);
  CHECK_FALSE(outcome.aborted);
}

TEST_CASE("token flood along a path takes n-1 rounds") {
  const NodeId n = 9;
  WeightedGraph path(n);
  for (NodeId i = 0; i + 1 < n; ++i) path.add_edge(i, i + 1, 1);
  SimConfig cfg;
  cfg.model = SimModel::kCongest;
  Simulator sim(cfg, path);
  TokenFlood prog(path, 0);
  const auto outcome = sim.run_phase("flood", prog, 3 * n);
  CHECK(outcome.rounds == n - 1);
}

TEST_CASE("words are never readable in the round they were sent") {
  Simulator sim(clique_cfg(), 4);
  OneShotProbe prog;
  sim.run_phase("probe", prog, 5);
  CHECK(prog.arrival() == 1);
}

TEST_CASE("clique bandwidth audit rejects two words on one ordered pair") {
  Simulator sim(clique_cfg(), 4);
  DoubleSender prog;
  CHECK_THROWS_AS(sim.run_phase("double", prog, 5), SimError);
  REQUIRE(sim.ledger().violations().size() == 1);
  CHECK(sim.ledger().violations()[0].kind == "bandwidth");
  CHECK(sim.ledger().phases().back().aborted);
}

TEST_CASE("congest audit rejects words on non-edges") {
  WeightedGraph path(3);
  path.add_edge(0, 1, 1);
  path.add_edge(1, 2, 1);
  SimConfig cfg;
  cfg.model = SimModel::kCongest;
  Simulator sim(cfg, path);
  NonEdgeSender prog;
  CHECK_THROWS_AS(sim.run_phase("nonedge", prog, 5), SimError);
  REQUIRE(sim.ledger().violations().size() == 1);
  CHECK(sim.ledger().violations()[0].kind == "bandwidth");
}

TEST_CASE("exhausting a hard budget raises and records a violation") {
  Simulator sim(clique_cfg(), 4);
  ChatterBox prog;
  CHECK_THROWS_AS(sim.run_phase("chatter", prog, 3), SimError);
  REQUIRE(sim.ledger().violations().size() == 1);
  CHECK(sim.ledger().violations()[0].kind == "budget");
}

TEST_CASE("a cutoff budget stops the phase cleanly") {
  Simulator sim(clique_cfg(), 4);
  ChatterBox prog;
  const auto outcome = sim.run_phase("chatter", prog, 3, true);
  CHECK(outcome.rounds == 3);
  CHECK_FALSE(outcome.aborted);
  CHECK(sim.ledger().violations().empty());
}

TEST_CASE("multiplexed streams charge the slowest stream, words accumulate") {
  const NodeId n = 8;
  Simulator sim(clique_cfg(), n);
  BroadcastProgram a(0, n), b(3, n);
  std::vector<NodeProgram*> streams{&a, &b};
  const auto outcome = sim.run_multiplexed("pipelined", streams, 10);
  CHECK(outcome.rounds == 1);
  CHECK(outcome.words == 2 * (n - 1));
}

TEST_CASE("multiplexed startup staggering adds extra rounds") {
  const NodeId n = 8;
  Simulator sim(clique_cfg(), n);
  BroadcastProgram a(0, n), b(3, n);
  std::vector<NodeProgram*> streams{&a, &b};
  const auto outcome = sim.run_multiplexed("pipelined", streams, 10, false, 3);
  CHECK(outcome.rounds == 4);
}

TEST_CASE("routing delivers within load bounds at constant round cost") {
  const NodeId n = 8;
  Simulator sim(clique_cfg(), n);
  std::vector<RouteMessage> msgs;
  for (NodeId v = 1; v < n; ++v) msgs.push_back({0, v, v, Weight{10} + v});
  const auto delivered = sim.lenzen_route("spread", msgs);
  for (NodeId v = 1; v < n; ++v) {
    REQUIRE(delivered[v].size() == 1);
    CHECK(delivered[v][0].src == 0);
    CHECK(delivered[v][0].value == Weight{10} + v);
  }
  CHECK(sim.ledger().phases().back().rounds == sim.config().lenzen_rounds);
  CHECK(sim.ledger().phases().back().words == n - 1);
}

TEST_CASE("routing delivery is grouped by destination and sorted") {
  Simulator sim(clique_cfg(), 6);
  std::vector<RouteMessage> msgs{
      {4, 2, 9, 1}, {1, 2, 5, 2}, {1, 2, 3, 3}, {5, 0, 0, 4}};
  const auto delivered = sim.lenzen_route("sorted", msgs);
  REQUIRE(delivered[2].size() == 3);
  CHECK(delivered[2][0].src == 1);
  CHECK(delivered[2][0].tag == 3);
  CHECK(delivered[2][1].src == 1);
  CHECK(delivered[2][1].tag == 5);
  CHECK(delivered[2][2].src == 4);
  REQUIRE(delivered[0].size() == 1);
}

TEST_CASE("routing rejects a destination over the n-word load bound") {
  const NodeId n = 8;
  Simulator sim(clique_cfg(), n);
  std::vector<RouteMessage> msgs;
  for (NodeId i = 0; i < n + 1; ++i)
    msgs.push_back({static_cast<NodeId>(1 + (i % 2)), 0, i, 1});
  CHECK_THROWS_AS(sim.lenzen_route("overload", msgs), SimError);
  REQUIRE_FALSE(sim.ledger().violations().empty());
  CHECK(sim.ledger().violations()[0].kind == "load");
}

TEST_CASE("routing an empty message set charges nothing") {
  Simulator sim(clique_cfg(), 4);
  const auto delivered = sim.lenzen_route("noop", {});
  CHECK(delivered.size() == 4);
  CHECK(sim.ledger().phases().back().rounds == 0);
  CHECK(sim.ledger().phases().back().words == 0);
}

TEST_CASE("a small-cluster topology upload stays within load bounds") {
  const NodeId n = 16;  // cluster of size 4 = sqrt(16)
  Simulator sim(clique_cfg(), n);
  const std::vector<NodeId> cluster{2, 5, 7, 11};
  std::vector<RouteMessage> msgs;
  for (std::size_t i = 0; i < cluster.size(); ++i)
    for (std::size_t j = i + 1; j < cluster.size(); ++j)
      msgs.push_back({cluster[i], cluster[0], cluster[j], 3});  // 6 edge words
  CHECK_NOTHROW(sim.lenzen_route("upload", msgs));
  CHECK(sim.ledger().violations().empty());
}

TEST_CASE("per-node rng streams are reproducible and independent") {
  Simulator sim1(clique_cfg(99), 8);
  Simulator sim2(clique_cfg(99), 8);
  Rng a = sim1.per_node_rng(5, "phase-x");
  Rng b = sim2.per_node_rng(5, "phase-x");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c = sim1.per_node_rng(6, "phase-x");
  Rng d = sim1.per_node_rng(5, "phase-y");
  Rng e = sim1.per_node_rng(5, "phase-x");
  int same_node = 0, same_phase = 0;
  for (int i = 0; i < 50; ++i) {
    const auto x = e.next_u64();
    same_node += x == c.next_u64();
    same_phase += x == d.next_u64();
  }
  CHECK(same_node == 0);
  CHECK(same_phase == 0);
}

TEST_CASE("round accounting is identical across identical runs") {
  WeightedGraph g(12);
  Rng rng(31);
  for (NodeId u = 0; u < 12; ++u)
    for (NodeId v = u + 1; v < 12; ++v)
      if (rng.chance(0.3))
        g.add_edge(u, v, static_cast<Weight>(rng.uniform_u64(1, 9)));
  const std::vector<NodeId> sources{0, 4};

  auto run_once = [&](std::int64_t* rounds) {
    Simulator sim(clique_cfg(7), g.num_nodes());
    auto d = limited_bf_streams(g, sources, 6, sim, "bf", 0, rounds);
    return std::make_pair(d, sim.ledger().total_words());
  };
  std::int64_t r1 = 0, r2 = 0;
  const auto [d1, w1] = run_once(&r1);
  const auto [d2, w2] = run_once(&r2);
  CHECK(d1 == d2);
  CHECK(r1 == r2);
  CHECK(w1 == w2);
}
