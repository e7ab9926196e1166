#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onefact/graph.hpp"

namespace onefact {

struct SpectralReport {
  int d = 0;
  double lambda = 0.0;        // max{|lambda_2|, |lambda_n|}
  double epsilon_star = 0.0;  // largest eps with lambda <= d^(1-eps), in [0,1]
  std::string method;         // "dense" or "iterative"
  double residual = 0.0;
};

// Requires a regular graph (throws std::invalid_argument otherwise).
// n <= 512 uses full dense eigendecomposition; larger graphs use power
// iteration on the squared adjacency operator deflated against the
// all-ones vector. Throws std::runtime_error if the iteration budget is
// exhausted before reaching tol.
SpectralReport second_eigenvalue(const Graph& g, double tol = 1e-8);

// The two routes, individually addressable for cross-checking.
SpectralReport second_eigenvalue_dense(const Graph& g);
SpectralReport second_eigenvalue_iterative(const Graph& g, double tol = 1e-8);

double epsilon_star_for(int d, double lambda);

struct MixingWitness {
  std::vector<int> s;
  std::vector<int> t;
  long e_st = 0;       // ordered-pair edge count
  double expected = 0; // d|S||T|/n
  double bound = 0;    // lambda*sqrt(|S||T|)
};

struct MixingAudit {
  bool pass = true;
  long pairs_checked = 0;
  bool exhaustive = false;
  std::optional<MixingWitness> witness;
};

// Ordered-pair count |{(x,y) in SxT : xy in E}|; S and T may overlap.
long ordered_edge_count(const Graph& g, const std::vector<int>& s,
                        const std::vector<int>& t);

// Checks |e(S,T) - d|S||T|/n| <= lambda*sqrt(|S||T|). Exhaustive over all
// subset pairs when n <= 16 (OpenMP kernel), otherwise `trials` sampled
// pairs. Requires a regular graph.
MixingAudit mixing_audit(const Graph& g, double lambda, int trials,
                         std::uint64_t seed);

// Serial reference for the exhaustive kernel; O(4^n * m), test use only.
MixingAudit mixing_audit_reference(const Graph& g, double lambda);

}  // namespace onefact
