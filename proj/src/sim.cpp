#include "hopset/sim.hpp"

#include <algorithm>
#include <ostream>

namespace hopset {

void RoundLedger::charge(const std::string& label, std::int64_t rounds,
                         std::int64_t words, std::int64_t max_words_per_pair,
                         bool aborted) {
  phases_.push_back({label, rounds, words, max_words_per_pair, aborted});
}

void RoundLedger::charge_extra_rounds(const std::string& label,
                                      std::int64_t rounds) {
  phases_.push_back({label, rounds, 0, 0, false});
}

std::int64_t RoundLedger::total_rounds() const {
  std::int64_t t = 0;
  for (const PhaseStats& p : phases_) t += p.rounds;
  return t;
}

std::int64_t RoundLedger::total_words() const {
  std::int64_t t = 0;
  for (const PhaseStats& p : phases_) t += p.words;
  return t;
}

void RoundLedger::write_traffic_csv(std::ostream& out) const {
  out << "phase,round,src,dst,words\n";
  for (const TrafficRow& r : traffic_)
    out << r.phase << ',' << r.round << ',' << r.src << ',' << r.dst << ','
        << r.words << '\n';
}

void RoundLedger::write_summary_csv(std::ostream& out) const {
  // Aggregate repeated labels so one logical phase shows up as one row.
  std::map<std::string, PhaseStats> agg;
  std::vector<std::string> order;
  for (const PhaseStats& p : phases_) {
    auto it = agg.find(p.label);
    if (it == agg.end()) {
      agg[p.label] = p;
      order.push_back(p.label);
    } else {
      it->second.rounds += p.rounds;
      it->second.words += p.words;
      it->second.max_words_per_pair =
          std::max(it->second.max_words_per_pair, p.max_words_per_pair);
      it->second.aborted |= p.aborted;
    }
  }
  out << "phase,total_rounds,total_words,max_words_per_pair\n";
  for (const std::string& label : order) {
    const PhaseStats& p = agg[label];
    out << p.label << ',' << p.rounds << ',' << p.words << ','
        << p.max_words_per_pair << '\n';
  }
}

Simulator::Simulator(SimConfig cfg, NodeId n) : cfg_(cfg), g_(nullptr), n_(n) {
  if (cfg_.model == SimModel::kCongest)
    throw std::invalid_argument("congest model requires a communication graph");
  pair_count_.assign(static_cast<std::size_t>(n_) * n_, 0);
  pair_epoch_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

Simulator::Simulator(SimConfig cfg, const WeightedGraph& comm_graph)
    : cfg_(cfg), g_(&comm_graph), n_(comm_graph.num_nodes()) {
  pair_count_.assign(static_cast<std::size_t>(n_) * n_, 0);
  pair_epoch_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

PhaseOutcome Simulator::run_stream(const std::string& label, NodeProgram& program,
                                   std::int64_t budget, bool budget_is_cutoff,
                                   std::int64_t* max_pair_words) {
  std::vector<Word> in_flight;
  std::vector<Word> outbox;
  std::vector<NodeId> senders;
  std::vector<char> is_edge;  // congest adjacency, lazily built
  if (cfg_.model == SimModel::kCongest) {
    is_edge.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (const Edge& e : g_->edges()) {
      is_edge[static_cast<std::size_t>(e.u) * n_ + e.v] = 1;
      is_edge[static_cast<std::size_t>(e.v) * n_ + e.u] = 1;
    }
  }

  PhaseOutcome out;
  std::int64_t last_send_round = -1;
  std::int64_t t = 0;
  while (true) {
    // Deliver everything sent in round t-1, grouped by destination and
    // sorted by sender so programs see a canonical order.
    if (!in_flight.empty()) {
      std::stable_sort(in_flight.begin(), in_flight.end(),
                       [](const Word& a, const Word& b) {
                         if (a.dst != b.dst) return a.dst < b.dst;
                         if (a.src != b.src) return a.src < b.src;
                         return a.tag < b.tag;
                       });
      std::size_t i = 0;
      while (i < in_flight.size()) {
        std::size_t j = i;
        while (j < in_flight.size() && in_flight[j].dst == in_flight[i].dst) ++j;
        program.receive(in_flight[i].dst, t,
                        std::span<const Word>(&in_flight[i], j - i));
        i = j;
      }
      in_flight.clear();
    }

    if (program.quiescent()) break;

    if (t >= budget) {
      if (budget_is_cutoff) break;
      Violation v{label, "budget", t, 0, 0, 0};
      ledger_.record_violation(v);
      out.aborted = true;
      out.rounds = t;
      throw SimError("phase '" + label + "' exceeded its round budget of " +
                     std::to_string(budget));
    }

    senders.clear();
    program.collect_senders(t, senders);
    outbox.clear();
    WordSink sink(&outbox);
    for (NodeId u : senders) program.send(u, t, sink);

    if (!outbox.empty()) {
      // Bandwidth audit for this round: at most one word per ordered pair,
      // and in congest mode only along communication edges.
      ++epoch_;
      for (const Word& w : outbox) {
        if (w.src >= n_ || w.dst >= n_ || w.src == w.dst)
          throw SimError("phase '" + label + "': malformed word endpoints");
        std::size_t idx = static_cast<std::size_t>(w.src) * n_ + w.dst;
        std::int64_t count =
            (pair_epoch_[idx] == epoch_ ? pair_count_[idx] : 0) + 1;
        pair_epoch_[idx] = epoch_;
        pair_count_[idx] = count;
        *max_pair_words = std::max(*max_pair_words, count);
        bool bad_pair = count > 1;
        bool bad_link = cfg_.model == SimModel::kCongest && !is_edge[idx];
        if (bad_pair || bad_link) {
          Violation v{label, "bandwidth", t, w.src, w.dst, count};
          ledger_.record_violation(v);
          out.aborted = true;
          out.rounds = t;
          throw SimError("phase '" + label + "' violated bandwidth at round " +
                         std::to_string(t) + " on pair " + std::to_string(w.src) +
                         "->" + std::to_string(w.dst));
        }
        if (cfg_.log_traffic)
          ledger_.record_traffic({label, t, w.src, w.dst, 1});
      }
      out.words += static_cast<std::int64_t>(outbox.size());
      last_send_round = t;
      in_flight.swap(outbox);
    }
    ++t;
    if (in_flight.empty() && program.quiescent()) break;
  }
  out.rounds = last_send_round + 1;
  return out;
}

PhaseOutcome Simulator::run_phase(const std::string& label, NodeProgram& program,
                                  std::int64_t budget, bool budget_is_cutoff) {
  std::int64_t max_pair = 0;
  PhaseOutcome out;
  try {
    out = run_stream(label, program, budget, budget_is_cutoff, &max_pair);
  } catch (const SimError&) {
    ledger_.charge(label, budget, 0, max_pair, true);
    throw;
  }
  ledger_.charge(label, out.rounds, out.words, max_pair, out.aborted);
  return out;
}

PhaseOutcome Simulator::run_multiplexed(const std::string& label,
                                        std::span<NodeProgram* const> streams,
                                        std::int64_t budget, bool budget_is_cutoff,
                                        std::int64_t extra_rounds) {
  PhaseOutcome total;
  std::int64_t max_pair = 0;
  for (NodeProgram* s : streams) {
    PhaseOutcome o;
    try {
      o = run_stream(label, *s, budget, budget_is_cutoff, &max_pair);
    } catch (const SimError&) {
      ledger_.charge(label, budget, total.words, max_pair, true);
      throw;
    }
    total.rounds = std::max(total.rounds, o.rounds);
    total.words += o.words;
  }
  total.rounds += extra_rounds;
  ledger_.charge(label, total.rounds, total.words, max_pair, false);
  return total;
}

std::vector<std::vector<Word>> Simulator::lenzen_route(
    const std::string& label, std::span<const RouteMessage> messages) {
  if (cfg_.model != SimModel::kClique)
    throw std::invalid_argument("lenzen_route is only defined in the clique model");
  std::vector<std::int64_t> out_load(n_, 0), in_load(n_, 0);
  for (const RouteMessage& m : messages) {
    if (m.src >= n_ || m.dst >= n_)
      throw SimError("lenzen_route '" + label + "': endpoint out of range");
    ++out_load[m.src];
    ++in_load[m.dst];
  }
  for (NodeId v = 0; v < n_; ++v) {
    if (out_load[v] > static_cast<std::int64_t>(n_) ||
        in_load[v] > static_cast<std::int64_t>(n_)) {
      Violation viol{label, "load", 0, v, v,
                     std::max(out_load[v], in_load[v])};
      ledger_.record_violation(viol);
      ledger_.charge(label, cfg_.lenzen_rounds, 0, 0, true);
      throw SimError("lenzen_route '" + label + "': node " + std::to_string(v) +
                     " exceeds the n-word load bound");
    }
  }
  std::vector<std::vector<Word>> delivered(n_);
  std::vector<RouteMessage> sorted(messages.begin(), messages.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RouteMessage& a, const RouteMessage& b) {
                     if (a.dst != b.dst) return a.dst < b.dst;
                     if (a.src != b.src) return a.src < b.src;
                     return a.tag < b.tag;
                   });
  for (const RouteMessage& m : sorted)
    delivered[m.dst].push_back({m.src, m.dst, m.tag, m.value});
  std::int64_t rounds = messages.empty() ? 0 : cfg_.lenzen_rounds;
  ledger_.charge(label, rounds, static_cast<std::int64_t>(messages.size()), 0,
                 false);
  return delivered;
}

Rng Simulator::per_node_rng(NodeId node, const std::string& phase) const {
  std::uint64_t h = hash_label(phase);
  Rng base(cfg_.seed ^ 0x9d8a7b6c5d4e3f21ULL);
  return base.split(h).split(node);
}

}  // namespace hopset
