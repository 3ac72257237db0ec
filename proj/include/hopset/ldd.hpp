// Low-diameter decompositions by exponential shifts, and hop-limited
// pairwise covers built from them.
//
// Every node u draws a shift r_u ~ Exp(alpha) and joins the cluster of the
// node x minimizing d(v,x) - r_x (ties to the smaller id).  The distributed
// version floods (center, r_x - d) residuals; a residual loses at least one
// weight unit per hop, so the flood provably stops after ceil(max_u r_u)
// rounds.  Shifts are quantized to 2^-20 units and all comparisons are done
// in 64-bit fixed point, so the simulated partition is bit-identical to the
// centralized argmin on the same shifts.

#ifndef HOPSET_LDD_HPP_
#define HOPSET_LDD_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hopset/graph.hpp"
#include "hopset/rounding.hpp"
#include "hopset/rng.hpp"
#include "hopset/sim.hpp"

namespace hopset {

struct LddConfig {
  double alpha = 0.1;
  int reps = 0;       // 0 = ceil(c1 * ln n)
  double c1 = 3.0;    // repetition constant, tuned for per-pair failure <= 1/n
};

inline int default_reps(NodeId n, double c1 = 3.0);

struct ShiftAssignment {
  static constexpr int kFracBits = 20;
  static constexpr std::int64_t kOne = std::int64_t{1} << kFracBits;
  std::vector<double> r;
  std::vector<std::int64_t> r_fp;  // round(r * 2^20)
  std::int64_t max_fp = 0;

  // Smallest whole number of weight units covering the largest shift.
  std::int64_t max_rounds() const { return (max_fp >> kFracBits) + 1; }
};

ShiftAssignment draw_shifts(NodeId n, double alpha, Rng& rng);

// Result of one decomposition: per node, the winning center, the residual
// r_center - dist (fixed point), the exact graph distance to the center in
// weight units, and the neighbor the winning message arrived from (self for
// centers).
struct Partition {
  std::vector<NodeId> center;
  std::vector<std::int64_t> residual_fp;
  std::vector<Weight> dist_to_center;
  std::vector<NodeId> parent;
  std::int64_t rounds = 0;
};

// Runs the shifted flood on the simulator (budget ceil(max r)+1 rounds).
Partition ldd_partition(const WeightedGraph& g, const ShiftAssignment& shifts,
                        Simulator& sim, const std::string& label);

// Same assignment computed by a centralized multi-source Dijkstra with
// identical tie-breaking.  Reference for tests and Monte-Carlo checks.
Partition ldd_partition_centralized(const WeightedGraph& g,
                                    const ShiftAssignment& shifts);

struct Cluster {
  int id = 0;
  int rep = 0;          // which repetition produced it
  NodeId center = 0;
  std::vector<NodeId> members;            // sorted
  std::vector<Weight> member_dist;        // distance to center, rounded units
  std::vector<NodeId> member_parent;      // flood tree, parallel to members
};

struct Cover {
  std::int64_t W = 0;
  std::int64_t ell = 0;
  Rational eps0;
  int reps = 0;
  std::int64_t eta_num = 0, eta_den = 0;
  std::vector<Cluster> clusters;
  std::vector<std::vector<std::int32_t>> node_clusters;  // per node, cluster ids
  std::int64_t rounds = 0;
};

// Rounds g to scale [W, 2W] with ell hops and runs `reps` independent
// decompositions with alpha = eps0/(2*ell), multiplexed as concurrent
// streams (rounds charge = max over streams).
Cover limited_pairwise_cover(const WeightedGraph& g, std::int64_t W,
                             std::int64_t ell, Rational eps0, int reps,
                             Simulator& sim, const std::string& label);

// Structural invariants: every repetition partitions the node set, centers
// belong to their clusters, flood trees are spanning and internal, and no
// node appears in more than `reps` clusters.  Returns human-readable
// violation strings; empty means the cover is well-formed.
std::vector<std::string> validate_cover(const Cover& cover, NodeId n);

// "cluster <id> center <c> scaleW <W> members ..." lines, sorted by id.
void write_cover(std::ostream& out, const Cover& cover);

struct PaddingReport {
  std::vector<double> freq;  // per node: fraction of trials with B(u,r) intact
  double bound = 0.0;        // exp(-2 r alpha)
  int trials = 0;
};

// Monte-Carlo estimate of the padding probability: how often the whole ball
// B(u,r) lands in a single cluster of a fresh decomposition of g.
PaddingReport padding_probability_check(const WeightedGraph& g, double alpha,
                                        Weight r, int trials,
                                        std::uint64_t seed);

inline int default_reps(NodeId n, double c1) {
  double v = c1 * std::log(static_cast<double>(std::max<NodeId>(n, 2)));
  return std::max(1, static_cast<int>(std::ceil(v)));
}

}  // namespace hopset

#endif  // HOPSET_LDD_HPP_
