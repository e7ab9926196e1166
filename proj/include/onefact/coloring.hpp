#pragma once

#include <vector>

#include "onefact/graph.hpp"
#include "onefact/matching_flow.hpp"

namespace onefact {

struct EdgeColoring {
  std::vector<int> colors;  // edge id -> color in [0, k)
  int k = 0;

  bool proper_in(const Graph& g) const;
  // Color classes as matchings (class c may be empty for c >= k).
  std::vector<Matching> classes(const Graph& g) const;
};

// Misra-Gries fan/alternating-chain recoloring; at most Delta+1 colors,
// smallest free color first, deterministic for a fixed edge order.
EdgeColoring vizing_edge_coloring(const Graph& g);

struct TwoFactorization {
  std::vector<std::vector<int>> factors;  // k edge-id sets, each 2-regular
};

// Petersen decomposition of a 2k-regular graph: per-component Euler
// orientation, 1-factorization of the out/in double cover, pull-back.
// Throws std::invalid_argument on odd or zero degrees.
TwoFactorization two_factorization(const Graph& g);

// Pairs matchings from the two sides so paired sizes agree, repeatedly
// matching the currently largest of each side and carving the larger down
// from the front of its edge-id order. Totals must agree.
std::vector<std::pair<Matching, Matching>> equalize_matching_pairs(
    std::vector<Matching> a_side, std::vector<Matching> b_side);

// Repeated perfect-matching extraction from a regular balanced bipartite
// view. Throws std::invalid_argument on non-regular views.
OneFactorization bipartite_one_factorization(const BipartiteView& v);

}  // namespace onefact
