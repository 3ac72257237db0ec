// End-to-end check harness: generate a graph, build a hopset, and evaluate a
// requested set of checks against exact oracles.  Reports are deterministic
// (fixed key order, sorted metrics) so byte-wise comparison across reruns is
// meaningful.

#ifndef HOPSET_EXPERIMENT_HPP_
#define HOPSET_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/hopset_builder.hpp"

namespace hopset {

enum class CheckKind {
  kStretch,      // every connected pair within [d, (1+eps) d] at the hop bound
  kSize,         // edge count against the size normalizer (cap optional)
  kHopbound,     // measured hop bound is finite (cap optional)
  kCover,        // structural cover validation found no violations
  kPadding,      // Monte-Carlo padding frequency meets its analytic bound
  kRounds,       // total rounds against beta * log2(n)^2 (cap optional)
  kDeterminism,  // rebuild with the same seed is byte-identical
};

CheckKind check_from_string(const std::string& s);
std::string to_string(CheckKind c);

struct ExperimentSpec {
  GraphKind kind = GraphKind::kErdosRenyi;
  NodeId n = 64;
  GenParams gen;
  HopsetConfig hopset;
  std::uint64_t seed = 1;
  int trials = 1;  // graph/build seeds seed, seed+1, ...
  std::vector<CheckKind> checks = {CheckKind::kStretch, CheckKind::kHopbound,
                                   CheckKind::kSize};
  // Optional caps; 0 disables the corresponding failure condition.
  int beta_budget = 0;        // stretch must hold within this many hops
  double size_ratio_cap = 0;  // |H| / normalizer must stay below this
  int beta_cap_check = 0;     // measured hop bound must stay below this
  double rounds_cap = 0;      // rounds / (beta * log2(n)^2) must stay below
  // Padding check parameters.
  double padding_alpha = 0.125;
  Weight padding_r = 2;
  int padding_trials = 200;
};

struct CheckOutcome {
  std::string name;
  bool pass = true;
  std::string detail;  // human-readable; includes a counterexample on failure
  std::map<std::string, double> metrics;
};

struct TrialReport {
  std::uint64_t seed = 0;
  NodeId n = 0;
  std::int64_t graph_edges = 0;
  std::int64_t hopset_edges = 0;
  int beta = 0;
  std::int64_t rounds = 0;
  double size_ratio = 0;
  std::vector<CheckOutcome> checks;
  bool pass = true;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<TrialReport> trials;
  bool pass = true;
};

ExperimentReport run_experiment(const ExperimentSpec& spec);

// Deterministic JSON rendering (fixed key order).
std::string report_to_json(const ExperimentReport& rep, int indent = 2);

// Human-readable "[PASS]/[FAIL] check ..." lines.
void write_report_text(std::ostream& out, const ExperimentReport& rep);

}  // namespace hopset

#endif  // HOPSET_EXPERIMENT_HPP_
