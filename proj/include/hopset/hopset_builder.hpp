// Hopset construction over doubling distance scales.
//
// For each scale [R, 2R] (R = 2^kappa, ascending) the builder works on the
// input graph augmented with all previously added shortcut edges:
//   1. a hop-limited pairwise cover at width W ~ eps'/log-factor of R,
//   2. clusters below ceil(n^mu) nodes ship their topology to the cluster
//      center over constant-round routing; the center answers with local
//      shortcut edges (exact distances),
//   3. clusters at or above the threshold get a star from their center
//      (exact hop-limited distances) and the deduplicated center set gets
//      mutual edges, both read off one batch of pipelined hop-limited
//      Bellman-Ford streams charged as max-stream rounds + source count.
// Scale edges never underestimate true distances, so stretch can only err
// upward and the final hop bound is measured rather than assumed.

#ifndef HOPSET_HOPSET_BUILDER_HPP_
#define HOPSET_HOPSET_BUILDER_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/ldd.hpp"
#include "hopset/local_hopset.hpp"
#include "hopset/rounding.hpp"
#include "hopset/sim.hpp"

namespace hopset {

struct HopsetConfig {
  double eps = 0.5;
  int k = 2;                  // local hierarchy depth
  LocalMode local_mode = LocalMode::kTz;
  double c2 = 2.0;            // per-scale budget eps' = eps / (c2 * log2 n)
  double mu = 0.5;            // big-cluster threshold ceil(n^mu)
  double cW = 0.25;           // cover width W = max(1, round(cW*eps'*R/ln n))
  int beta_cap = 0;           // exploration cap: ell = 2*beta_cap+1; 0 = n-1
  Rational cover_eps0{1, 2};  // rounding slack inside covers
  double cover_c1 = 3.0;      // cover repetitions = ceil(c1 * ln n)
  std::int64_t min_scale_R = 8;  // scales with R below this are skipped
  bool log_traffic = false;   // keep per-round ledger rows (memory-heavy)
};

struct ScaleStats {
  int kappa = 0;
  std::int64_t R = 0, W = 0, ell = 0;
  int clusters = 0, small_clusters = 0, big_clusters = 0, big_centers = 0;
  int max_beta_prime = 0;
  std::int64_t edges_added = 0;
  std::int64_t rounds = 0;
  std::int64_t cover_violations = 0;
};

struct Hopset {
  NodeId n = 0;
  std::map<int, std::vector<Edge>> per_scale;  // kappa -> edges added there
  std::vector<Edge> edges;                     // union, min weight per pair
};

struct BuildResult {
  Hopset hopset;
  std::vector<ScaleStats> scales;
  double eps = 0;
  double eps_prime = 0;  // after any automatic downward adjustment
  int reps = 0;
  NodeId big_threshold = 0;
  std::int64_t total_rounds = 0;
  std::int64_t total_words = 0;
  std::int64_t violations = 0;
  RoundLedger ledger;
};

BuildResult build_hopset(const WeightedGraph& g, const HopsetConfig& cfg,
                         std::uint64_t seed);

// Smallest hop budget b such that every connected pair satisfies
// d <= d^b(G+H) <= (1+eps)*d, by an incremental hop-limited sweep.
// Exact integer arithmetic; eps enters as an exact dyadic rational.
int measure_hopbound(const WeightedGraph& g, std::span<const Edge> hopset,
                     double eps,
                     const std::vector<std::vector<Weight>>* exact = nullptr);

// est <= (1+eps) * d, exactly (eps is a dyadic rational as an IEEE double).
bool within_stretch(Weight est, Weight d, double eps);

struct SizeReport {
  std::int64_t edges = 0;
  double normalizer = 0;  // n^(1+1/(2k)) * log2 n + n * log2^2 n
  double ratio = 0;
  std::map<int, std::int64_t> per_scale;
};

SizeReport size_report(const Hopset& h, int k);

// "u v w scale" lines sorted by (scale, u, v); byte-stable across runs.
void write_hopset_dump(std::ostream& out, const Hopset& h);

// One JSON object per scale, keys in fixed order; byte-stable across runs.
void write_scale_stats_jsonl(std::ostream& out, const BuildResult& r);

}  // namespace hopset

#endif  // HOPSET_HOPSET_BUILDER_HPP_
