#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onefact/graph.hpp"
#include "onefact/matching_flow.hpp"

namespace onefact {

struct PartitionConfig {
  int max_retries = 64;
  double slack = 3.0;     // multiplier on the d^(2/3) / t^(2/3) windows
  int sample_count = 200; // subset pairs per piece for sampled audits
};

struct Bipartition {
  std::vector<int> side;  // 0 = A_i, 1 = B_i per vertex
};

struct PartitionPlan {
  int t = 0;
  std::vector<Bipartition> bipartitions;
  std::vector<int> piece_of_edge;  // edge id -> piece index (c(e))

  BipartiteView piece_view(const Graph& g, int i) const;
};

struct SubsetAudit {
  bool holds = true;
  bool exhaustive = false;
  int piece = -1;
  std::vector<int> witness_x, witness_y;
};

struct PartitionDiagnostics {
  // Degree window d/2 +- slack*d^(2/3) over the crossing graphs (R1) and
  // crossing-count window t/2 +- slack*t^(2/3) (R2); slack values are the
  // largest observed deviation beyond the nominal center.
  bool r1_ok = true, r2_ok = true;
  double r1_slack = 0, r2_slack = 0;
  bool s1_ok = true;          // pieces partition E and respect bipartitions
  bool balanced_ok = true;
  bool s4_ok = true;
  double s4_slack = 0;
  SubsetAudit s2, s3, s5;
  std::string violation;  // human-readable first failure, empty if none

  bool hard_ok() const { return s1_ok && balanced_ok; }
  bool all_ok() const {
    return r1_ok && r2_ok && s1_ok && balanced_ok && s4_ok && s2.holds &&
           s3.holds && s5.holds;
  }
};

// t independent uniform balanced bipartitions, resampled wholesale until
// (R1) and (R2) hold within cfg.slack, up to cfg.max_retries. Requires
// regular g with even n. Throws std::runtime_error when retries run out.
std::vector<Bipartition> balanced_bipartitions_dense(const Graph& g, int t,
                                                     const PartitionConfig& cfg,
                                                     std::uint64_t seed);

// Sparse route: pair up vertices via a perfect matching of the auxiliary
// graph (non-adjacent, no common neighbor), then split each pair across
// sides by an independent coin per pair per piece. Requires the auxiliary
// graph to have min degree >= n/2 (throws std::invalid_argument if not;
// the caller should use the dense path).
std::vector<Bipartition> balanced_bipartitions_sparse(
    const Graph& g, int t, const PartitionConfig& cfg, std::uint64_t seed);

// True when the sparse structural precondition d^2 <= n/2 holds.
bool sparse_applicable(const Graph& g);

// C(e) = pieces whose bipartition e crosses; c(e) uniform over C(e).
// Throws std::runtime_error naming the edge when some C(e) is empty
// (callers resample upstream).
PartitionPlan assign_edges(const Graph& g,
                           const std::vector<Bipartition>& bipartitions,
                           std::uint64_t seed);

PartitionDiagnostics partition_diagnostics(const Graph& g,
                                           const PartitionPlan& plan,
                                           const PartitionConfig& cfg,
                                           std::uint64_t seed = 0);

// Serialization: "piece vertex side" lines then "edge piece" lines.
void write_partition_plan(const PartitionPlan& plan, std::ostream& out);

}  // namespace onefact
