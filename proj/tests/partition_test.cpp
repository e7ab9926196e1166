#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "onefact/generators.hpp"
#include "onefact/partition.hpp"

using namespace onefact;

namespace {
Graph complete(int n) {
  GenSpec s;
  s.model = GenModel::kComplete;
  s.n = n;
  return generate(s);
}
Graph cycle(int n) {
  GenSpec s;
  s.model = GenModel::kCycle;
  s.n = n;
  return generate(s);
}
}  // namespace

TEST_CASE("dense bipartitions satisfy the degree and crossing windows") {
  Graph g = complete(12);
  PartitionConfig cfg;
  auto parts = balanced_bipartitions_dense(g, 3, cfg, 5);
  REQUIRE(parts.size() == 3);
  const int d = *g.regular_degree();
  const double window = cfg.slack * std::pow(double(d), 2.0 / 3.0);
  for (const auto& p : parts) {
    CHECK(std::count(p.side.begin(), p.side.end(), 0) == 6);
    std::vector<int> deg(12, 0);
    for (const auto& [u, v] : g.edges())
      if (p.side[u] != p.side[v]) ++deg[u], ++deg[v];
    for (int v = 0; v < 12; ++v)
      CHECK(std::abs(deg[v] - d / 2.0) <= window);
  }
}

TEST_CASE("sparse route applies exactly when 2d^2 <= n") {
  CHECK(sparse_applicable(cycle(8)));
  CHECK(!sparse_applicable(complete(8)));
}

TEST_CASE("sparse bipartitions split each auxiliary pair") {
  Graph g = cycle(16);
  PartitionConfig cfg;
  auto parts = balanced_bipartitions_sparse(g, 3, cfg, 2);
  for (const auto& p : parts)
    CHECK(std::count(p.side.begin(), p.side.end(), 0) == 8);
}


// assign_edges fails when some edge crosses no bipartition, which for t
// independent splits happens with constant probability per edge; the
// caller's contract is to resample. These tests do the same.
PartitionPlan plan_with_retry(const Graph& g, int t, const PartitionConfig& cfg,
                              std::vector<Bipartition>& parts_out) {
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    auto parts = balanced_bipartitions_dense(g, t, cfg, seed);
    try {
      PartitionPlan plan = assign_edges(g, parts, seed + 1);
      parts_out = parts;
      return plan;
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  throw std::runtime_error("no covering bipartition triple found");
}

TEST_CASE("edge assignment respects crossings and is complete") {
  Graph g = complete(8);
  PartitionConfig cfg;
  std::vector<Bipartition> parts;
  PartitionPlan plan = plan_with_retry(g, 3, cfg, parts);
  PartitionDiagnostics diag = partition_diagnostics(g, plan, cfg, 1);
  CHECK(diag.s1_ok);
  CHECK(diag.balanced_ok);
  CHECK(diag.r1_ok);
  CHECK(diag.r2_ok);
  CHECK(diag.hard_ok());
}

TEST_CASE("assignment fails loudly when an edge crosses nothing") {
  Graph g = complete(4);
  Bipartition p;
  p.side = {0, 0, 1, 1};  // edge 0-1 crosses nothing
  CHECK_THROWS_AS(assign_edges(g, {p}, 0), std::runtime_error);
}

TEST_CASE("piece views cover the assigned edges") {
  Graph g = complete(8);
  PartitionConfig cfg;
  std::vector<Bipartition> parts;
  PartitionPlan plan = plan_with_retry(g, 3, cfg, parts);
  long covered = 0;
  for (int i = 0; i < plan.t; ++i) {
    BipartiteView v = plan.piece_view(g, i);
    CHECK(v.balanced());
    covered += long(v.crossing.size());
    for (int id : v.crossing) CHECK(plan.piece_of_edge[id] == i);
  }
  CHECK(covered == g.edge_count());
}

TEST_CASE("subset diagnostics witnesses are genuine when reported") {
  Graph g = complete(8);
  PartitionConfig cfg;
  std::vector<Bipartition> parts;
  PartitionPlan plan = plan_with_retry(g, 3, cfg, parts);
  PartitionDiagnostics diag = partition_diagnostics(g, plan, cfg, 3);
  // n <= 16: subset audits are exhaustive.
  CHECK(diag.s2.exhaustive);
  for (const SubsetAudit* audit : {&diag.s2, &diag.s3, &diag.s5}) {
    if (audit->holds) continue;
    CHECK(audit->piece >= 0);
    CHECK(!audit->witness_x.empty());
    // Witness members really live on opposite sides of the named piece.
    for (int x : audit->witness_x)
      CHECK(plan.bipartitions[audit->piece].side[x] == 0);
    for (int y : audit->witness_y)
      CHECK(plan.bipartitions[audit->piece].side[y] == 1);
  }
}

TEST_CASE("dense sampler reports the violated window on exhaustion") {
  Graph g = complete(12);
  PartitionConfig cfg;
  cfg.slack = 0.0;  // impossible windows
  cfg.max_retries = 4;
  CHECK_THROWS_WITH_AS(balanced_bipartitions_dense(g, 3, cfg, 1),
                       doctest::Contains("(R1)"), std::runtime_error);
}

TEST_CASE("input validation") {
  PartitionConfig cfg;
  CHECK_THROWS_AS(balanced_bipartitions_dense(complete(5), 3, cfg, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(balanced_bipartitions_dense(complete(12), 0, cfg, 0),
                  std::invalid_argument);
  // Dense auxiliary structure: K_12 pairs always conflict.
  CHECK_THROWS_AS(balanced_bipartitions_sparse(complete(12), 3, cfg, 0),
                  std::invalid_argument);
}
