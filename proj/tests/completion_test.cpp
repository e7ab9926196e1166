#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "onefact/completion.hpp"
#include "onefact/generators.hpp"
#include "onefact/pipeline.hpp"

using namespace onefact;

TEST_CASE("bounded submatching identity cases") {
  Graph g = Graph::build(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}, {0, 1}, {2, 3}});
  BipartiteView h = BipartiteView::from_sides(g, {0, 0, 0, 0, 1, 1, 1, 1});
  Matching m{{4, 5}};  // the two A-internal edges
  // Full size with a generous bound returns m itself.
  Matching full = bounded_submatching(m, 2, h, 4, 4, 1);
  full.normalize();
  CHECK(full.edge_ids == m.edge_ids);
  CHECK(bounded_submatching(m, 0, h, 0, 1, 1).edge_ids.empty());
  CHECK_THROWS_AS(bounded_submatching(m, 3, h, 4, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("bounded submatching reports impossible constraints") {
  Graph g = Graph::build(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}, {0, 1}, {2, 3}});
  BipartiteView h = BipartiteView::from_sides(g, {0, 0, 0, 0, 1, 1, 1, 1});
  Matching m{{4, 5}};
  // bound 0: any picked edge pairs a vertex seen by h.
  CHECK_THROWS_AS(bounded_submatching(m, 1, h, 0, 8, 1), std::runtime_error);
}

TEST_CASE("split matching partitions into at most k matchings") {
  Graph g = Graph::build(12, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}});
  BipartiteView h = BipartiteView::from_sides(g, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
  Matching m{{0, 1, 2, 3, 4, 5}};
  auto pieces = split_matching(m, 3, h, 2, 16, 2);
  CHECK(pieces.size() <= 3);
  std::set<int> all;
  for (const auto& p : pieces) {
    CHECK(p.valid_in(g));
    all.insert(p.edge_ids.begin(), p.edge_ids.end());
  }
  CHECK(all.size() == 6);
  // k=1 and below-threshold inputs pass through unsplit.
  CHECK(split_matching(m, 1, h, 2, 1, 0).size() == 1);
  Matching tiny{{0}};
  CHECK(split_matching(tiny, 3, h, 100, 1, 0).size() == 1);
}

TEST_CASE("absorption of K_4 around a 2+2 split") {
  Graph k4 = Graph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  BipartiteView h = BipartiteView::from_sides(k4, {0, 0, 1, 1});
  CompletionConfig cfg;
  OneFactorization f = absorb_internal_edges(k4, h, cfg, 1);
  CHECK(f.classes.size() == 3);
  CHECK(verify_factorization(k4, f).accept);
}

TEST_CASE("absorption with no internal edges is a plain bipartite peel") {
  GenSpec s;
  s.model = GenModel::kBipartiteRegular;
  s.n = 12;
  s.d = 4;
  s.seed = 6;
  Graph g = generate(s);
  std::vector<int> side(12, 0);
  for (int b = 6; b < 12; ++b) side[b] = 1;
  BipartiteView h = BipartiteView::from_sides(g, side);
  OneFactorization f = absorb_internal_edges(g, h, CompletionConfig{}, 2);
  CHECK(f.classes.size() == 4);
  CHECK(verify_factorization(g, f).accept);
}

TEST_CASE("absorption of a cycle layer plus internal matchings") {
  // 3-regular: C_8 crossing layer (alternating sides) plus one internal
  // matching edge pair on each side.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 8; ++i) edges.push_back({i, (i + 1) % 8});
  edges.push_back({0, 4});  // internal to side A = evens
  edges.push_back({2, 6});
  edges.push_back({1, 5});  // internal to side B = odds
  edges.push_back({3, 7});
  Graph g = Graph::build(8, edges);
  std::vector<int> side(8);
  for (int i = 0; i < 8; ++i) side[i] = i % 2;
  BipartiteView h = BipartiteView::from_sides(g, side);
  OneFactorization f = absorb_internal_edges(g, h, CompletionConfig{}, 3);
  CHECK(f.classes.size() == 3);
  CHECK(verify_factorization(g, f).accept);
}

TEST_CASE("absorption emits perfect matchings every round") {
  // Planted instance: a 5-regular bipartite crossing layer on sides of
  // ten vertices plus one internal perfect matching per side, giving a
  // 6-regular graph whose split has equal internal counts.
  GenSpec s;
  s.model = GenModel::kBipartiteRegular;
  s.n = 20;
  s.d = 5;
  s.seed = 12;
  Graph base = generate(s);
  std::vector<std::pair<int, int>> edges = base.edges();
  for (int i = 0; i < 10; i += 2) edges.push_back({i, i + 1});
  for (int i = 10; i < 20; i += 2) edges.push_back({i, i + 1});
  Graph g = Graph::build(20, edges);
  std::vector<int> side(20, 0);
  for (int i = 10; i < 20; ++i) side[i] = 1;
  // Absorption is randomized; retry over a few seeds and validate the
  // first success in depth.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BipartiteView h = BipartiteView::from_sides(g, side);
    try {
      OneFactorization f = absorb_internal_edges(g, h, CompletionConfig{}, seed);
      REQUIRE(f.classes.size() == 6);
      for (const auto& m : f.classes) {
        CHECK(m.size() == 10);
        CHECK(m.valid_in(g));
      }
      CHECK(verify_factorization(g, f).accept);
      return;
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  // All seeds failing on a 20-vertex instance would itself be a bug.
  FAIL("absorption failed for every seed");
}

TEST_CASE("regularity is required") {
  Graph p4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}});
  BipartiteView h = BipartiteView::from_sides(p4, {0, 1, 0, 1});
  CHECK_THROWS_AS(absorb_internal_edges(p4, h, CompletionConfig{}, 0),
                  std::invalid_argument);
}
