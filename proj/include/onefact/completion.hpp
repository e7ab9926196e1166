#pragma once

#include <cstdint>
#include <vector>

#include "onefact/coloring.hpp"
#include "onefact/graph.hpp"
#include "onefact/matching_flow.hpp"

namespace onefact {

struct CompletionConfig {
  double alpha = 0.1;       // goodness parameter, <= 1/10
  double beta = 0.15;       // matched-neighbor degree bound as fraction of r1
  int submatch_retries = 16;
  int split_k = 1;          // >1 engages matching splitting before carving
  int max_rounds = 0;       // 0 = auto: e(R[A]) + r1
};

// Uniformly random size-`size` sub-matching of m, resampled until no
// vertex of h has more than `bound` h-neighbors among the sub-matching's
// covered vertices. Deterministic per seed. Throws std::runtime_error
// naming a witness vertex when retries run out.
Matching bounded_submatching(const Matching& m, int size,
                             const BipartiteView& h, int bound, int retries,
                             std::uint64_t seed);

// Partitions m into <= k matchings with the same per-piece degree bound
// as bounded_submatching, by independent uniform label permutations per
// block of k edges. Returns {m} unsplit when k == 1 or |m| < bound/2.
std::vector<Matching> split_matching(const Matching& m, int k,
                                     const BipartiteView& h, int bound,
                                     int retries, std::uint64_t seed);

// Absorption loop: repeatedly Vizing-color the residual internal graphs
// R[A], R[B], pair their color classes at equal sizes, carve a bounded
// sub-matching from the largest pair on each side, and extend across the
// uncovered vertices by a perfect matching of the remaining crossing
// edges; each round emits one perfect matching of r_graph. Once the
// internal edges are gone the regular bipartite remainder is finished by
// bipartite_one_factorization. h.host must be &r_graph and h.side defines
// the split; r_graph must be regular. Throws std::runtime_error on
// unrecoverable extension failure, imbalance, or round-cap breach.
OneFactorization absorb_internal_edges(const Graph& r_graph,
                                       const BipartiteView& h,
                                       const CompletionConfig& cfg,
                                       std::uint64_t seed);

}  // namespace onefact
