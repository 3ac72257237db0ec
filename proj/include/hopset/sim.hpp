// Synchronous message-passing simulator with bandwidth accounting.
//
// Two models:
//   kCongest - a node may send at most one word per incident edge per round,
//              and only along edges of the communication graph;
//   kClique  - a node may send at most one word to every other node per round.
//
// One word carries one (node-id, value) pair.  All sends of round t are
// delivered at the start of round t+1; a program can never read a word in
// the round it was sent.  Every phase is charged to a labelled ledger; the
// ledger also records bandwidth violations (which abort the offending phase
// and raise SimError, since they indicate an algorithm bug, not bad input).

#ifndef HOPSET_SIM_HPP_
#define HOPSET_SIM_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/rng.hpp"

namespace hopset {

enum class SimModel { kCongest, kClique };

struct SimConfig {
  SimModel model = SimModel::kClique;
  int word_bits = 64;       // informational; payloads are one id + one value
  std::uint64_t seed = 0;   // master seed for per-node, per-phase streams
  int lenzen_rounds = 2;    // constant round charge for one routing invocation
  bool log_traffic = false; // keep per-round (src,dst) rows for CSV export
};

struct Word {
  NodeId src = 0;
  NodeId dst = 0;
  NodeId tag = 0;        // id half of the payload
  std::int64_t value = 0;  // value half of the payload
};

class WordSink {
 public:
  explicit WordSink(std::vector<Word>* out) : out_(out) {}
  void send(NodeId src, NodeId dst, NodeId tag, std::int64_t value) {
    out_->push_back({src, dst, tag, value});
  }

 private:
  std::vector<Word>* out_;
};

// One distributed computation.  The engine calls, per round t:
//   receive(u, t, words)      for every u with non-empty inbox (sorted by src)
//   collect_senders(t, out)   once, to learn which nodes transmit
//   send(u, t, sink)          for every u in that list
// quiescent() is polled between rounds; the phase ends when it returns true
// and no words are in flight.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void receive(NodeId u, std::int64_t round, std::span<const Word> inbox) = 0;
  virtual void collect_senders(std::int64_t round, std::vector<NodeId>& out) = 0;
  virtual void send(NodeId u, std::int64_t round, WordSink& sink) = 0;
  virtual bool quiescent() const = 0;
};

struct Violation {
  std::string phase;
  std::string kind;  // "bandwidth", "load", "budget"
  std::int64_t round = 0;
  NodeId src = 0, dst = 0;
  std::int64_t words = 0;
};

struct PhaseStats {
  std::string label;
  std::int64_t rounds = 0;
  std::int64_t words = 0;
  std::int64_t max_words_per_pair = 0;  // per ordered pair per round, audited traffic
  bool aborted = false;
};

struct TrafficRow {
  std::string phase;
  std::int64_t round;
  NodeId src, dst;
  std::int64_t words;
};

class RoundLedger {
 public:
  void charge(const std::string& label, std::int64_t rounds, std::int64_t words,
              std::int64_t max_words_per_pair, bool aborted);
  void charge_extra_rounds(const std::string& label, std::int64_t rounds);
  void record_violation(Violation v) { violations_.push_back(std::move(v)); }
  void record_traffic(TrafficRow row) { traffic_.push_back(std::move(row)); }

  const std::vector<PhaseStats>& phases() const { return phases_; }
  const std::vector<Violation>& violations() const { return violations_; }
  std::int64_t total_rounds() const;
  std::int64_t total_words() const;

  // "phase,round,src,dst,words" rows (requires SimConfig::log_traffic).
  void write_traffic_csv(std::ostream& out) const;
  // "phase,total_rounds,total_words,max_words_per_pair" summary.
  void write_summary_csv(std::ostream& out) const;

 private:
  std::vector<PhaseStats> phases_;
  std::vector<Violation> violations_;
  std::vector<TrafficRow> traffic_;
};

struct PhaseOutcome {
  std::int64_t rounds = 0;
  std::int64_t words = 0;
  bool aborted = false;
};

struct SimError : std::runtime_error {
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

struct RouteMessage {
  NodeId src = 0;
  NodeId dst = 0;
  NodeId tag = 0;
  std::int64_t value = 0;
};

class Simulator {
 public:
  // Clique-model simulator on n nodes (throws if cfg asks for kCongest,
  // which needs a communication graph).
  Simulator(SimConfig cfg, NodeId n);
  // Either model; in kCongest mode words may travel only along edges of
  // comm_graph.  The graph must outlive the simulator.
  Simulator(SimConfig cfg, const WeightedGraph& comm_graph);

  // Runs one phase for at most `budget` rounds.  With budget_is_cutoff the
  // budget is a designed stopping point (the program is simply halted there);
  // otherwise exhausting it records a "budget" violation and throws.
  PhaseOutcome run_phase(const std::string& label, NodeProgram& program,
                         std::int64_t budget, bool budget_is_cutoff = false);

  // Runs independent logical streams of one pipelined computation and charges
  // max (not sum) of their round counts, plus `extra_rounds` for startup
  // staggering.  Word counts accumulate across streams; the bandwidth audit
  // applies per stream.
  PhaseOutcome run_multiplexed(const std::string& label,
                               std::span<NodeProgram* const> streams,
                               std::int64_t budget, bool budget_is_cutoff = false,
                               std::int64_t extra_rounds = 0);

  // Constant-round routing: every message is delivered (grouped by
  // destination, sorted by (src, tag)) provided no node sends more than n
  // words and no node receives more than n words.  A violated load bound
  // records a "load" violation and throws.
  std::vector<std::vector<Word>> lenzen_route(const std::string& label,
                                              std::span<const RouteMessage> messages);

  // Deterministic per-(seed, node, phase) stream.
  Rng per_node_rng(NodeId node, const std::string& phase) const;

  const SimConfig& config() const { return cfg_; }
  NodeId num_nodes() const { return n_; }
  RoundLedger& ledger() { return ledger_; }
  const RoundLedger& ledger() const { return ledger_; }

 private:
  struct Audit;
  PhaseOutcome run_stream(const std::string& label, NodeProgram& program,
                          std::int64_t budget, bool budget_is_cutoff,
                          std::int64_t* max_pair_words);

  SimConfig cfg_;
  const WeightedGraph* g_;
  NodeId n_;
  RoundLedger ledger_;
  // Dense per-ordered-pair counters with epoch stamping, reused across rounds.
  std::vector<std::int64_t> pair_count_;
  std::vector<std::uint32_t> pair_epoch_;
  std::uint32_t epoch_ = 0;
};

}  // namespace hopset

#endif  // HOPSET_SIM_HPP_
