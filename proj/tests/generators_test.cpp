#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "onefact/generators.hpp"

using namespace onefact;

namespace {
GenSpec spec(GenModel m, int n, int d = 0, std::uint64_t seed = 0) {
  GenSpec s;
  s.model = m;
  s.n = n;
  s.d = d;
  s.seed = seed;
  return s;
}
}  // namespace

TEST_CASE("model names") {
  CHECK(parse_gen_model("complete") == GenModel::kComplete);
  CHECK(parse_gen_model("random-regular") == GenModel::kRandomRegular);
  CHECK_THROWS_AS(parse_gen_model("unknown"), std::invalid_argument);
}

TEST_CASE("complete and cycle graphs") {
  Graph k4 = generate(spec(GenModel::kComplete, 4));
  CHECK(k4.edge_count() == 6);
  CHECK(k4.regular_degree() == 3);
  Graph c6 = generate(spec(GenModel::kCycle, 6));
  CHECK(c6.edge_count() == 6);
  CHECK(c6.regular_degree() == 2);
}

TEST_CASE("random regular basics") {
  // n=4, d=3 is forced: the only 3-regular graph on 4 vertices is K_4.
  Graph forced = generate(spec(GenModel::kRandomRegular, 4, 3, 9));
  CHECK(forced.edge_count() == 6);
  Graph g = generate(spec(GenModel::kRandomRegular, 6, 3, 1));
  CHECK(g.regular_degree() == 3);
  CHECK_THROWS_AS(generate(spec(GenModel::kRandomRegular, 5, 3, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec(GenModel::kRandomRegular, 4, 4, 1)),
                  std::invalid_argument);
}

TEST_CASE("random regular at repair-path sizes") {
  // Whole-sample rejection alone is hopeless here; the swap-repair path
  // must still deliver simple regular graphs.
  for (auto [n, d] : {std::pair{50, 6}, {200, 16}}) {
    Graph g = generate(spec(GenModel::kRandomRegular, n, d, 7));
    CHECK(g.regular_degree() == d);
    CHECK(g.edge_count() == n * d / 2);
  }
}

TEST_CASE("same seed gives identical graphs") {
  for (int s = 0; s < 3; ++s) {
    Graph a = generate(spec(GenModel::kRandomRegular, 30, 4, s));
    Graph b = generate(spec(GenModel::kRandomRegular, 30, 4, s));
    CHECK(a.edges() == b.edges());
    std::ostringstream oa, ob;
    write_edge_list(a, oa);
    write_edge_list(b, ob);
    CHECK(oa.str() == ob.str());
  }
}

TEST_CASE("bipartite regular model") {
  Graph g = generate(spec(GenModel::kBipartiteRegular, 12, 3, 5));
  CHECK(g.regular_degree() == 3);
  for (const auto& [u, v] : g.edges()) CHECK(((u < 6) != (v < 6)));
  CHECK_THROWS_AS(generate(spec(GenModel::kBipartiteRegular, 12, 7, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec(GenModel::kBipartiteRegular, 11, 3, 5)),
                  std::invalid_argument);
}
