#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "onefact/graph.hpp"

namespace onefact {

// A vertex 2-coloring of the host together with the crossing-edge subgraph.
// Edges inside a side are simply not part of the view.
struct BipartiteView {
  const Graph* host = nullptr;
  std::vector<int> side;  // 0 = A, 1 = B, for every host vertex
  std::vector<int> a;     // A-side vertices
  std::vector<int> b;     // B-side vertices
  std::vector<int> crossing;  // crossing edge ids

  static BipartiteView from_sides(const Graph& g, std::vector<int> side);

  bool balanced() const { return a.size() == b.size(); }
  // Per-vertex degree counting crossing edges only.
  std::vector<int> view_degrees() const;
  int min_view_degree() const;
  // r if every vertex has exactly r crossing edges.
  std::optional<int> regular_degree() const;
};

struct Factor {
  std::vector<int> edge_ids;
  int r = 0;
  bool valid_in(const BipartiteView& v) const;
};

struct HallWitness {
  int from_side = 0;           // side X lives on (0 = A)
  std::vector<int> x;          // |N(x)| < |x|
  std::vector<int> neighbors;  // N(X)
};

struct PerfectMatchingResult {
  std::optional<Matching> matching;
  std::optional<HallWitness> witness;
};

struct RFactorResult {
  std::optional<Factor> factor;
  // On infeasibility: e(x, y) < r(|x| + |y| - m), from the min cut.
  std::vector<int> x, y;
};

// Maximum matching on the view's crossing edges (augmenting-path free on
// return). No preconditions beyond a valid view.
Matching max_bipartite_matching(const BipartiteView& v);

// Balanced views only: either a perfect matching or a Hall witness set.
PerfectMatchingResult perfect_matching_or_witness(const BipartiteView& v);

// Gale-Ryser r-factor via max flow (source->A at r, crossing at 1, B->sink
// at r). Balanced views only; r >= 0.
RFactorResult r_factor(const BipartiteView& v, int r);

// Largest r for which r_factor succeeds, by binary search over
// [0, min view degree], plus the factor itself.
std::pair<int, Factor> max_feasible_factor(const BipartiteView& v);

struct FactorConditionParams {
  double r = 0;
  double phi = 1;
  double beta1 = 0, beta2 = 0, beta3 = 0, gamma = 0;
  int sample_count = 200;  // for n > 16
  std::uint64_t seed = 0;
};

struct ConditionReport {
  bool holds = true;
  bool exhaustive = false;
  std::vector<int> witness_x, witness_y;  // empty when holds
  int witness_vertex = -1;                // P1 only
};

struct FactorConditionDiagnostic {
  ConditionReport p1, p2, p3, p4;
  bool all() const { return p1.holds && p2.holds && p3.holds && p4.holds; }
};

// Checks (P1) exactly, (P2)/(P3) exhaustively for n <= 16 else on sampled
// subset pairs, (P4) arithmetically.
FactorConditionDiagnostic check_factor_conditions(
    const BipartiteView& v, const FactorConditionParams& p);

// Perfect matching in a (not necessarily bipartite) graph with n even and
// min degree >= n/2: greedy matching plus pigeonhole swap-augmentation.
// Throws std::invalid_argument when the precondition fails.
Matching min_degree_perfect_matching(const Graph& g);

// Maximum matching over crossing edges restricted to alive edges and
// active vertices; workhorse for the completion loop's shrunken layers.
Matching max_matching_restricted(const Graph& g, const std::vector<int>& side,
                                 const std::vector<char>& edge_alive,
                                 const std::vector<char>& vertex_active);

}  // namespace onefact
