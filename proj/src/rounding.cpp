#include "hopset/rounding.hpp"

#include <stdexcept>

namespace hopset {

namespace {
// ceil(a*b / c) for nonnegative a*b with intermediate in 128 bits.
std::int64_t ceil_mul_div(std::int64_t a, std::int64_t b, std::int64_t c) {
  __int128 prod = static_cast<__int128>(a) * b;
  return static_cast<std::int64_t>((prod + c - 1) / c);
}
}  // namespace

Weight RoundedGraph::unround(Weight hat) const {
  if (hat >= kInf) return kInf;
  return ceil_mul_div(hat, eta_num, eta_den);
}

RoundedGraph round_weights(const WeightedGraph& g, std::int64_t R,
                           std::int64_t ell, Rational eps0) {
  if (R < 1 || ell < 1)
    throw std::invalid_argument("round_weights: R and ell must be >= 1");
  if (eps0.num <= 0 || eps0.den <= 0 || eps0.num > eps0.den)
    throw std::invalid_argument("round_weights: need 0 < eps0 <= 1");
  RoundedGraph out;
  out.R = R;
  out.ell = ell;
  out.eps0 = eps0;
  out.eta_num = eps0.num * R;
  out.eta_den = eps0.den * ell;
  out.rounded = WeightedGraph(g.num_nodes());
  for (const Edge& e : g.edges()) {
    // ceil(w / eta) = ceil(w * eta_den / eta_num); always >= 1 since w >= 1.
    Weight hat = ceil_mul_div(e.w, out.eta_den, out.eta_num);
    out.rounded.add_edge(e.u, e.v, hat);
  }
  return out;
}

}  // namespace hopset
