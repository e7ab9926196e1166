#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "onefact/completion.hpp"
#include "onefact/graph.hpp"
#include "onefact/partition.hpp"
#include "onefact/spectral.hpp"

namespace onefact {

enum class PipelineMode { kAuto, kDense, kSparse };

struct PipelineConfig {
  int t = 3;               // piece count, odd
  double epsilon = 0.5;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  int max_attempts = 256;  // Monte Carlo outer attempts
  int full_attempts = 8;   // attempts with t pieces before the t=1 fallback
  PipelineMode force_mode = PipelineMode::kAuto;
  bool compute_spectral = true;
  PartitionConfig partition;
  CompletionConfig completion;
};

struct PipelineStats {
  int attempts = 0;
  int t_used = 0;
  int r_star = 0;                  // uniform per-piece factor degree
  std::vector<int> group_degrees;  // r'_i per piece
  double target_r_bar = 0;         // asymptotic (d/t)(1-16/t^(1/3)), advisory
  double wall_seconds = 0;
};

struct FactorizeOutcome {
  std::optional<OneFactorization> factorization;
  std::string stage;   // failing stage on failure, empty on success
  std::string detail;
  SpectralReport spectral;
  PipelineStats stats;

  bool ok() const { return factorization.has_value(); }
};

struct VerifyVerdict {
  bool accept = true;
  std::string violation;  // first violation: kind + witness
};

// Randomized 1-factorization search: bipartite inputs go straight to
// Hall-based peeling; otherwise each attempt partitions the graph,
// extracts a uniform r-factor per piece, 2-factorizes the remainder into
// round-robin groups, and completes each piece by absorption. Attempts
// beyond cfg.full_attempts use the single-bipartition direct-absorption
// route. Failure is Monte Carlo: it never certifies that no factorization
// exists. Throws std::invalid_argument on non-regular input or odd n with
// edges present.
FactorizeOutcome factorize(const Graph& g, const PipelineConfig& cfg);

// Accepts iff f has exactly d classes, each a perfect matching, pairwise
// edge-disjoint, with union E(g).
VerifyVerdict verify_factorization(const Graph& g, const OneFactorization& f);

struct BoundReport {
  double log_lower = 0;     // (dn/2) ln((1-eps) d / (2 e^2))
  double log_upper = 0;     // (dn/2) ln(d / e^2); 1+o(1) factor omitted
  bool upper_asymptotic_flag = true;
  std::optional<double> log_schrijver;  // k (2 ln d! - d ln d)
};

// Natural-log bound values. Throws std::invalid_argument outside the
// domain (n odd, d < 1, epsilon outside (0,1)).
BoundReport counting_bounds(int n, int d, double epsilon,
                            std::optional<int> k = std::nullopt);

// Factorization file format: '#' comment lines, then one "u v k" line per
// edge with k the class index in [0, d).
void write_factorization(const Graph& g, const OneFactorization& f,
                         std::ostream& out,
                         const std::vector<std::string>& comments = {});
// Parses the format and maps rows onto g's edges. Parse errors throw
// std::invalid_argument; semantic mismatches (unknown edge, duplicate)
// surface through verify_factorization on the returned object, which may
// therefore be structurally loose.
OneFactorization read_factorization(std::istream& in, const Graph& g,
                                    std::string* problem = nullptr);

}  // namespace onefact
