#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "onefact/graph.hpp"

using namespace onefact;

TEST_CASE("build validates simplicity") {
  CHECK_THROWS_AS(Graph::build(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::build(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::build(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::build(3, {{-1, 0}}), std::invalid_argument);
  Graph g = Graph::build(3, {{0, 1}, {1, 2}});
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
}

TEST_CASE("degrees and regularity") {
  Graph p3 = Graph::build(3, {{0, 1}, {1, 2}});
  CHECK(p3.degree(1) == 2);
  CHECK(p3.min_degree() == 1);
  CHECK(p3.max_degree() == 2);
  CHECK(!p3.regular_degree().has_value());
  Graph c4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(c4.regular_degree() == 2);
}

TEST_CASE("subtract maps edge ids") {
  Graph c4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto [rest, remap] = c4.subtract({1, 3});
  CHECK(rest.edge_count() == 2);
  CHECK(remap[1] == -1);
  CHECK(remap[3] == -1);
  CHECK(rest.edge(remap[0]) == c4.edge(0));
  CHECK(rest.edge(remap[2]) == c4.edge(2));
  CHECK(rest.vertex_count() == 4);
}

TEST_CASE("matching validity and cover") {
  Graph c4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Matching good{{0, 2}};
  CHECK(good.valid_in(c4));
  auto cov = good.covered(c4);
  CHECK(cov == std::vector<char>{1, 1, 1, 1});
  Matching overlapping{{0, 1}};  // both touch vertex 1
  CHECK(!overlapping.valid_in(c4));
  Matching unsorted{{2, 0}};
  unsorted.normalize();
  CHECK(unsorted.edge_ids == std::vector<int>{0, 2});
}

TEST_CASE("edge list round trip is byte identical") {
  Graph g = Graph::build(5, {{0, 4}, {1, 2}, {2, 3}});
  std::ostringstream first;
  write_edge_list(g, first, {"sample header"});
  std::istringstream back(first.str());
  Graph h = read_edge_list(back);
  std::ostringstream second;
  write_edge_list(h, second, {"sample header"});
  CHECK(first.str() == second.str());
  CHECK(h.edge_count() == g.edge_count());
  CHECK(h.edges() == g.edges());
}

TEST_CASE("edge list reader rejects malformed input") {
  std::istringstream bad("2 1\n0\n");
  CHECK_THROWS_AS(read_edge_list(bad), std::invalid_argument);
  std::istringstream loop("2 1\n1 1\n");
  CHECK_THROWS_AS(read_edge_list(loop), std::invalid_argument);
}
