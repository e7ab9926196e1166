#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "onefact/generators.hpp"
#include "onefact/pipeline.hpp"

using namespace onefact;

namespace {

Graph complete_graph(int n) {
  GenSpec s;
  s.model = GenModel::kComplete;
  s.n = n;
  return generate(s);
}

Graph petersen() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});
  for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});
  for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5});
  return Graph::build(10, e);
}

// All perfect matchings of g, as sorted edge-id lists, by recursion on
// the lowest uncovered vertex. Independent of the library's matchers.
void all_pms_rec(const Graph& g, std::vector<char>& covered,
                 std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  int u = -1;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!covered[v]) {
      u = v;
      break;
    }
  if (u < 0) {
    out.push_back(cur);
    return;
  }
  for (const auto& h : g.neighbors(u)) {
    if (covered[h.to]) continue;
    covered[u] = covered[h.to] = 1;
    cur.push_back(h.edge_id);
    all_pms_rec(g, covered, cur, out);
    cur.pop_back();
    covered[u] = covered[h.to] = 0;
  }
}

std::vector<std::vector<int>> all_perfect_matchings(const Graph& g) {
  std::vector<char> covered(g.vertex_count(), 0);
  std::vector<int> cur;
  std::vector<std::vector<int>> out;
  all_pms_rec(g, covered, cur, out);
  for (auto& m : out) std::sort(m.begin(), m.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  return true;
}

// Ordered sequences of d pairwise disjoint perfect matchings covering
// every edge, counted by brute force over the full matching list.
long count_ordered_factorizations(const Graph& g) {
  auto pms = all_perfect_matchings(g);
  int d = *g.regular_degree();
  long count = 0;
  std::vector<int> pick;
  std::vector<char> used(g.edge_count(), 0);
  std::function<void()> rec = [&]() {
    if (int(pick.size()) == d) {
      ++count;
      return;
    }
    for (std::size_t i = 0; i < pms.size(); ++i) {
      bool ok = true;
      for (int e : pms[i])
        if (used[e]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (int e : pms[i]) used[e] = 1;
      pick.push_back(int(i));
      rec();
      pick.pop_back();
      for (int e : pms[i]) used[e] = 0;
    }
  };
  rec();
  return count;
}

std::string serialized(const Graph& g, const OneFactorization& f) {
  std::ostringstream out;
  write_factorization(g, f, out);
  return out.str();
}

}  // namespace

TEST_CASE("complete graphs factorize") {
  for (int n : {4, 6, 8}) {
    Graph g = complete_graph(n);
    PipelineConfig cfg;
    cfg.t = 1;
    cfg.seed = 5;
    FactorizeOutcome out = factorize(g, cfg);
    REQUIRE(out.ok());
    CHECK(int(out.factorization->classes.size()) == n - 1);
    CHECK(verify_factorization(g, *out.factorization).accept);
    CHECK(out.stage.empty());
  }
}

TEST_CASE("the Petersen graph is refused, matching the exhaustive oracle") {
  Graph g = petersen();
  // Oracle: every pair of perfect matchings of the Petersen graph shares
  // an edge, so no 1-factorization exists.
  auto pms = all_perfect_matchings(g);
  CHECK(pms.size() == 6);
  for (std::size_t i = 0; i < pms.size(); ++i)
    for (std::size_t j = i + 1; j < pms.size(); ++j)
      CHECK_FALSE(disjoint(pms[i], pms[j]));
  CHECK(count_ordered_factorizations(g) == 0);

  PipelineConfig cfg;
  cfg.t = 1;
  cfg.max_attempts = 20;
  FactorizeOutcome out = factorize(g, cfg);
  CHECK_FALSE(out.ok());
  CHECK_FALSE(out.stage.empty());
  CHECK(out.stats.attempts == 20);
}

TEST_CASE("bipartite inputs use the deterministic peel") {
  GenSpec s;
  s.model = GenModel::kBipartiteRegular;
  s.n = 16;
  s.d = 5;
  s.seed = 3;
  Graph g = generate(s);
  PipelineConfig cfg;
  cfg.seed = 9;
  FactorizeOutcome a = factorize(g, cfg);
  REQUIRE(a.ok());
  CHECK(int(a.factorization->classes.size()) == 5);
  CHECK(verify_factorization(g, *a.factorization).accept);
  FactorizeOutcome b = factorize(g, cfg);
  REQUIRE(b.ok());
  CHECK(serialized(g, *a.factorization) == serialized(g, *b.factorization));
}

TEST_CASE("repeated runs with one seed are byte-identical") {
  GenSpec s;
  s.model = GenModel::kRandomRegular;
  s.n = 30;
  s.d = 6;
  s.seed = 11;
  Graph g = generate(s);
  PipelineConfig cfg;
  cfg.seed = 4;
  FactorizeOutcome a = factorize(g, cfg);
  FactorizeOutcome b = factorize(g, cfg);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(serialized(g, *a.factorization) == serialized(g, *b.factorization));
  CHECK(a.stats.attempts == b.stats.attempts);
}

TEST_CASE("verification rejects corrupted factorizations") {
  Graph g = complete_graph(6);
  PipelineConfig cfg;
  cfg.t = 1;
  FactorizeOutcome out = factorize(g, cfg);
  REQUIRE(out.ok());
  OneFactorization good = *out.factorization;
  REQUIRE(verify_factorization(g, good).accept);

  OneFactorization wrong_count = good;
  wrong_count.classes.pop_back();
  CHECK_FALSE(verify_factorization(g, wrong_count).accept);

  OneFactorization reused = good;
  reused.classes[0].edge_ids[0] = reused.classes[1].edge_ids[0];
  VerifyVerdict v = verify_factorization(g, reused);
  CHECK_FALSE(v.accept);
  CHECK_FALSE(v.violation.empty());

  OneFactorization hole = good;
  hole.classes[2].edge_ids.pop_back();
  CHECK_FALSE(verify_factorization(g, hole).accept);
}

TEST_CASE("invalid inputs are refused up front") {
  Graph path = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(factorize(path, PipelineConfig{}), std::invalid_argument);
  Graph k6 = complete_graph(6);
  PipelineConfig bad_eps;
  bad_eps.epsilon = 1.0;
  CHECK_THROWS_AS(factorize(k6, bad_eps), std::invalid_argument);
  PipelineConfig even_t;
  even_t.t = 2;
  CHECK_THROWS_AS(factorize(k6, even_t), std::invalid_argument);
}

TEST_CASE("counting bound values match independent formulas") {
  BoundReport rep = counting_bounds(10, 4, 0.5, 4);
  const double e2 = std::exp(2.0);
  CHECK(rep.log_lower == doctest::Approx(20.0 * std::log(0.5 * 4 / (2 * e2))));
  CHECK(rep.log_upper == doctest::Approx(20.0 * std::log(4.0 / e2)));
  CHECK(rep.upper_asymptotic_flag);
  REQUIRE(rep.log_schrijver.has_value());
  // k (2 ln d! - d ln d) with the factorial expanded by hand.
  double lnfact = std::log(24.0);
  CHECK(*rep.log_schrijver == doctest::Approx(4 * (2 * lnfact - 4 * std::log(4.0))));

  BoundReport small = counting_bounds(6, 3, 0.5, 3);
  CHECK(*small.log_schrijver ==
        doctest::Approx(3 * (2 * std::log(6.0) - 3 * std::log(3.0))));

  CHECK_THROWS_AS(counting_bounds(7, 3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(counting_bounds(8, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(counting_bounds(8, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(counting_bounds(8, 3, 0.5, 0), std::invalid_argument);
}

TEST_CASE("ordered factorization counts of small complete bipartite graphs") {
  // K_{k,k} ordered 1-factorizations are the k x k Latin squares.
  std::vector<std::pair<int, int>> e33, e44;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e33.push_back({i, 3 + j});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e44.push_back({i, 4 + j});
  CHECK(count_ordered_factorizations(Graph::build(6, e33)) == 12);
  CHECK(count_ordered_factorizations(Graph::build(8, e44)) == 576);
}

TEST_CASE("factorization files round trip") {
  Graph g = complete_graph(6);
  PipelineConfig cfg;
  cfg.t = 1;
  cfg.seed = 2;
  FactorizeOutcome out = factorize(g, cfg);
  REQUIRE(out.ok());
  std::ostringstream buf;
  write_factorization(g, *out.factorization, buf, {"six vertices"});
  CHECK(buf.str().rfind("# six vertices\n", 0) == 0);

  std::istringstream in(buf.str());
  std::string problem;
  OneFactorization back = read_factorization(in, g, &problem);
  CHECK(problem.empty());
  CHECK(verify_factorization(g, back).accept);
  CHECK(serialized(g, back) == serialized(g, *out.factorization));
}

TEST_CASE("reader flags rows that do not name edges") {
  Graph g = complete_graph(4);
  std::istringstream in("0 1 0\n0 9 1\n");
  std::string problem;
  OneFactorization f = read_factorization(in, g, &problem);
  CHECK_FALSE(problem.empty());
  CHECK_FALSE(verify_factorization(g, f).accept);
  std::istringstream bad("0 1 zebra\n");
  CHECK_THROWS_AS(read_factorization(bad, g), std::invalid_argument);
}
