// Scale-aware weight rounding.
//
// For a distance scale [R, 2R] probed with at most ell hops, weights are
// divided by eta = eps0*R/ell and rounded up.  Any path with <= ell edges and
// weight <= 2R then has rounded length <= ceil(2*ell/eps0) + ell, and
// rescaling a rounded length never underestimates the true weight:
//   w(path) <= eta * rounded(path) <= (1+eps0) * w(path) + ell * eta.
// eta is kept as an exact rational so every comparison stays in integers.

#ifndef HOPSET_ROUNDING_HPP_
#define HOPSET_ROUNDING_HPP_

#include <cstdint>

#include "hopset/graph.hpp"

namespace hopset {

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

struct RoundedGraph {
  WeightedGraph rounded;     // same topology, weights ceil(w/eta) >= 1
  std::int64_t R = 0;
  std::int64_t ell = 0;
  Rational eps0;
  std::int64_t eta_num = 0;  // eta = eta_num / eta_den = eps0*R/ell
  std::int64_t eta_den = 0;

  // ceil(eta * hat), i.e. a rounded length mapped back to original units
  // without ever underestimating.
  Weight unround(Weight hat) const;
};

// Requires R >= 1, ell >= 1 and 0 < eps0 <= 1.
RoundedGraph round_weights(const WeightedGraph& g, std::int64_t R,
                           std::int64_t ell, Rational eps0);

}  // namespace hopset

#endif  // HOPSET_ROUNDING_HPP_
