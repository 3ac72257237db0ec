#include "hopset/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "hopset/ldd.hpp"
#include "hopset/oracles.hpp"

namespace hopset {

namespace {

using nlohmann::ordered_json;

// Hop-limited distances from s in aug after exactly h relaxation rounds.
std::vector<Weight> dp_at(const WeightedGraph& aug, NodeId s, int h) {
  const NodeId n = aug.num_nodes();
  std::vector<Weight> cur(n, kInf), next(n);
  cur[s] = 0;
  for (int round = 0; round < h; ++round) {
    next = cur;
    bool changed = false;
    for (NodeId u = 0; u < n; ++u) {
      if (cur[u] >= kInf) continue;
      for (const Arc& a : aug.neighbors(u)) {
        if (cur[u] + a.w < next[a.to]) {
          next[a.to] = cur[u] + a.w;
          changed = true;
        }
      }
    }
    cur.swap(next);
    if (!changed) break;
  }
  return cur;
}

std::string pair_detail(NodeId s, NodeId v, Weight est, Weight d, double eps) {
  std::ostringstream os;
  os << "pair (" << s << "," << v << "): estimate " << est << " vs exact " << d
     << " at eps " << eps;
  return os.str();
}

CheckOutcome check_stretch(const ExperimentSpec& spec, const WeightedGraph& g,
                           const WeightedGraph& aug,
                           const std::vector<std::vector<Weight>>& exact,
                           int beta) {
  CheckOutcome out;
  out.name = to_string(CheckKind::kStretch);
  const double eps = spec.hopset.eps;
  if (beta == kNoHops) {
    out.pass = false;
    out.detail = "no hop budget reaches the stretch bound";
  }
  const int budget =
      spec.beta_budget > 0 ? spec.beta_budget : std::max(beta, 1);
  out.metrics["beta_budget"] = budget;
  if (!out.pass) return out;

  const NodeId n = g.num_nodes();
  std::int64_t pairs = 0;
  double worst = 1.0;
  for (NodeId s = 0; s < n && out.pass; ++s) {
    const auto est = dp_at(aug, s, budget);
    for (NodeId v = 0; v < n; ++v) {
      if (v == s || exact[s][v] >= kInf) continue;
      ++pairs;
      if (est[v] < exact[s][v] || !within_stretch(est[v], exact[s][v], eps)) {
        out.pass = false;
        out.detail = pair_detail(s, v, est[v], exact[s][v], eps);
        break;
      }
      worst = std::max(worst, static_cast<double>(est[v]) /
                                  static_cast<double>(exact[s][v]));
    }
  }
  out.metrics["pairs"] = static_cast<double>(pairs);
  out.metrics["worst_ratio"] = worst;
  if (out.pass) out.detail = "all connected pairs within bound";
  return out;
}

CheckOutcome check_size(const ExperimentSpec& spec, const BuildResult& build) {
  CheckOutcome out;
  out.name = to_string(CheckKind::kSize);
  const SizeReport rep = size_report(build.hopset, spec.hopset.k);
  out.metrics["edges"] = static_cast<double>(rep.edges);
  out.metrics["normalizer"] = rep.normalizer;
  out.metrics["ratio"] = rep.ratio;
  if (spec.size_ratio_cap > 0 && rep.ratio > spec.size_ratio_cap) {
    out.pass = false;
    std::ostringstream os;
    os << "size ratio " << rep.ratio << " exceeds cap " << spec.size_ratio_cap;
    out.detail = os.str();
  } else {
    out.detail = "size ratio " + std::to_string(rep.ratio);
  }
  return out;
}

CheckOutcome check_hopbound(const ExperimentSpec& spec, int beta) {
  CheckOutcome out;
  out.name = to_string(CheckKind::kHopbound);
  out.metrics["beta"] = beta;
  if (beta == kNoHops) {
    out.pass = false;
    out.detail = "no finite hop bound achieves the stretch";
  } else if (spec.beta_cap_check > 0 && beta > spec.beta_cap_check) {
    out.pass = false;
    out.detail = "hop bound " + std::to_string(beta) + " exceeds cap " +
                 std::to_string(spec.beta_cap_check);
  } else {
    out.detail = "hop bound " + std::to_string(beta);
  }
  return out;
}

CheckOutcome check_cover(const BuildResult& build) {
  CheckOutcome out;
  out.name = to_string(CheckKind::kCover);
  std::int64_t viol = 0;
  for (const ScaleStats& s : build.scales) viol += s.cover_violations;
  out.metrics["violations"] = static_cast<double>(viol);
  out.metrics["sim_violations"] = static_cast<double>(build.violations);
  out.pass = viol == 0 && build.violations == 0;
  out.detail = out.pass ? "all covers structurally valid"
                        : "structural or accounting violations recorded";
  return out;
}

CheckOutcome check_padding(const ExperimentSpec& spec, const WeightedGraph& g,
                           std::uint64_t seed) {
  CheckOutcome out;
  out.name = to_string(CheckKind::kPadding);
  const PaddingReport rep = padding_probability_check(
      g, spec.padding_alpha, spec.padding_r, spec.padding_trials, seed);
  double mean = 0;
  for (double f : rep.freq) mean += f;
  if (!rep.freq.empty()) mean /= static_cast<double>(rep.freq.size());
  const double sigma =
      std::sqrt(std::max(rep.bound * (1 - rep.bound), 1e-12) /
                static_cast<double>(std::max(rep.trials, 1)));
  const double floor = rep.bound - 3 * sigma;
  out.metrics["mean_frequency"] = mean;
  out.metrics["bound"] = rep.bound;
  out.metrics["floor"] = floor;
  out.pass = mean >= floor;
  std::ostringstream os;
  os << "mean padded frequency " << mean << " vs floor " << floor;
  out.detail = os.str();
  return out;
}

CheckOutcome check_rounds(const ExperimentSpec& spec, const BuildResult& build,
                          int beta, NodeId n) {
  CheckOutcome out;
  out.name = to_string(CheckKind::kRounds);
  const double lg = std::log2(static_cast<double>(std::max<NodeId>(n, 2)));
  const double denom = std::max(1.0, static_cast<double>(std::max(beta, 1)) *
                                         lg * lg);
  const double normalized =
      static_cast<double>(build.total_rounds) / denom;
  out.metrics["rounds"] = static_cast<double>(build.total_rounds);
  out.metrics["normalized"] = normalized;
  if (spec.rounds_cap > 0 && normalized > spec.rounds_cap) {
    out.pass = false;
    std::ostringstream os;
    os << "normalized rounds " << normalized << " exceeds cap "
       << spec.rounds_cap;
    out.detail = os.str();
  } else {
    std::ostringstream os;
    os << "rounds " << build.total_rounds << ", normalized " << normalized;
    out.detail = os.str();
  }
  return out;
}

CheckOutcome check_determinism(const ExperimentSpec& spec,
                               const WeightedGraph& g,
                               const BuildResult& build, std::uint64_t seed) {
  CheckOutcome out;
  out.name = to_string(CheckKind::kDeterminism);
  const BuildResult again = build_hopset(g, spec.hopset, seed);
  std::ostringstream a, b;
  write_hopset_dump(a, build.hopset);
  write_hopset_dump(b, again.hopset);
  const bool same_edges = a.str() == b.str();
  const bool same_rounds = build.total_rounds == again.total_rounds &&
                           build.total_words == again.total_words;
  out.pass = same_edges && same_rounds;
  out.metrics["rerun_rounds"] = static_cast<double>(again.total_rounds);
  out.detail = out.pass ? "rerun byte-identical"
               : !same_edges
                   ? "rerun produced different edges"
                   : "rerun produced different round/word accounting";
  return out;
}

ordered_json spec_to_json(const ExperimentSpec& spec) {
  ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  j["eps"] = spec.hopset.eps;
  j["k"] = spec.hopset.k;
  j["local_mode"] = to_string(spec.hopset.local_mode);
  j["seed"] = spec.seed;
  j["trials"] = spec.trials;
  std::vector<std::string> names;
  names.reserve(spec.checks.size());
  for (CheckKind c : spec.checks) names.push_back(to_string(c));
  j["checks"] = names;
  if (spec.beta_budget > 0) j["beta_budget"] = spec.beta_budget;
  if (spec.size_ratio_cap > 0) j["size_ratio_cap"] = spec.size_ratio_cap;
  if (spec.beta_cap_check > 0) j["beta_cap_check"] = spec.beta_cap_check;
  if (spec.rounds_cap > 0) j["rounds_cap"] = spec.rounds_cap;
  return j;
}

}  // namespace

CheckKind check_from_string(const std::string& s) {
  if (s == "stretch") return CheckKind::kStretch;
  if (s == "size") return CheckKind::kSize;
  if (s == "hopbound") return CheckKind::kHopbound;
  if (s == "cover") return CheckKind::kCover;
  if (s == "padding") return CheckKind::kPadding;
  if (s == "rounds") return CheckKind::kRounds;
  if (s == "determinism") return CheckKind::kDeterminism;
  throw std::invalid_argument("unknown check: " + s);
}

std::string to_string(CheckKind c) {
  switch (c) {
    case CheckKind::kStretch: return "stretch";
    case CheckKind::kSize: return "size";
    case CheckKind::kHopbound: return "hopbound";
    case CheckKind::kCover: return "cover";
    case CheckKind::kPadding: return "padding";
    case CheckKind::kRounds: return "rounds";
    case CheckKind::kDeterminism: return "determinism";
  }
  return "unknown";
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  ExperimentReport rep;
  rep.spec = spec;
  for (int t = 0; t < spec.trials; ++t) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(t);
    const WeightedGraph g = generate_graph(spec.kind, spec.n, spec.gen, seed);
    const BuildResult build = build_hopset(g, spec.hopset, seed);
    const auto exact = all_pairs_dijkstra(g);
    const WeightedGraph aug = augment_min(g, build.hopset.edges);

    TrialReport trial;
    trial.seed = seed;
    trial.n = g.num_nodes();
    trial.graph_edges = static_cast<std::int64_t>(g.num_edges());
    trial.hopset_edges = static_cast<std::int64_t>(build.hopset.edges.size());
    trial.rounds = build.total_rounds;
    trial.size_ratio = size_report(build.hopset, spec.hopset.k).ratio;
    trial.beta =
        measure_hopbound(g, build.hopset.edges, spec.hopset.eps, &exact);

    for (CheckKind c : spec.checks) {
      CheckOutcome out;
      switch (c) {
        case CheckKind::kStretch:
          out = check_stretch(spec, g, aug, exact, trial.beta);
          break;
        case CheckKind::kSize:
          out = check_size(spec, build);
          break;
        case CheckKind::kHopbound:
          out = check_hopbound(spec, trial.beta);
          break;
        case CheckKind::kCover:
          out = check_cover(build);
          break;
        case CheckKind::kPadding:
          out = check_padding(spec, g, seed);
          break;
        case CheckKind::kRounds:
          out = check_rounds(spec, build, trial.beta, g.num_nodes());
          break;
        case CheckKind::kDeterminism:
          out = check_determinism(spec, g, build, seed);
          break;
      }
      trial.pass = trial.pass && out.pass;
      trial.checks.push_back(std::move(out));
    }
    rep.pass = rep.pass && trial.pass;
    rep.trials.push_back(std::move(trial));
  }
  return rep;
}

std::string report_to_json(const ExperimentReport& rep, int indent) {
  ordered_json j;
  j["spec"] = spec_to_json(rep.spec);
  j["pass"] = rep.pass;
  ordered_json trials = ordered_json::array();
  for (const TrialReport& t : rep.trials) {
    ordered_json tj;
    tj["seed"] = t.seed;
    tj["n"] = t.n;
    tj["graph_edges"] = t.graph_edges;
    tj["hopset_edges"] = t.hopset_edges;
    tj["beta"] = t.beta;
    tj["rounds"] = t.rounds;
    tj["size_ratio"] = t.size_ratio;
    tj["pass"] = t.pass;
    ordered_json checks = ordered_json::array();
    for (const CheckOutcome& c : t.checks) {
      ordered_json cj;
      cj["name"] = c.name;
      cj["pass"] = c.pass;
      cj["detail"] = c.detail;
      cj["metrics"] = c.metrics;  // std::map keeps key order sorted
      checks.push_back(cj);
    }
    tj["checks"] = checks;
    trials.push_back(tj);
  }
  j["trials"] = trials;
  return j.dump(indent);
}

void write_report_text(std::ostream& out, const ExperimentReport& rep) {
  for (const TrialReport& t : rep.trials) {
    out << "trial seed=" << t.seed << " n=" << t.n << " beta=" << t.beta
        << " hopset_edges=" << t.hopset_edges << " rounds=" << t.rounds
        << '\n';
    for (const CheckOutcome& c : t.checks)
      out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": "
          << c.detail << '\n';
  }
  out << (rep.pass ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << '\n';
}

}  // namespace hopset
