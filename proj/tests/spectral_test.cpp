#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "onefact/generators.hpp"
#include "onefact/spectral.hpp"

using namespace onefact;

namespace {
Graph cycle(int n) {
  GenSpec s;
  s.model = GenModel::kCycle;
  s.n = n;
  return generate(s);
}
Graph random_regular(int n, int d, std::uint64_t seed) {
  GenSpec s;
  s.model = GenModel::kRandomRegular;
  s.n = n;
  s.d = d;
  s.seed = seed;
  return generate(s);
}

// Circulant oracle: eig(C_n) = {2cos(2pi k/n)}; lambda excludes k=0.
double cycle_lambda(int n) {
  double best = 0;
  for (int k = 1; k < n; ++k)
    best = std::max(best, std::abs(2.0 * std::cos(2.0 * M_PI * k / n)));
  return best;
}
}  // namespace

TEST_CASE("dense route matches the circulant spectrum") {
  for (int n = 5; n <= 64; ++n) {
    SpectralReport rep = second_eigenvalue_dense(cycle(n));
    CHECK(rep.lambda == doctest::Approx(cycle_lambda(n)).epsilon(1e-9));
    CHECK(rep.method == "dense");
  }
}

TEST_CASE("complete graph lambda is 1") {
  GenSpec s;
  s.model = GenModel::kComplete;
  s.n = 12;
  SpectralReport rep = second_eigenvalue(generate(s));
  CHECK(rep.lambda == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("iterative route agrees with dense") {
  for (auto [n, d, seed] : {std::tuple{40, 4, 1}, {60, 6, 2}, {100, 10, 3}}) {
    Graph g = random_regular(n, d, seed);
    double dense = second_eigenvalue_dense(g).lambda;
    double iter = second_eigenvalue_iterative(g, 1e-10).lambda;
    CHECK(std::abs(dense - iter) < 1e-6);
  }
}

TEST_CASE("epsilon_star inverts the lambda threshold") {
  CHECK(epsilon_star_for(4, 2.0) == doctest::Approx(0.5));
  CHECK(epsilon_star_for(9, 3.0) == doctest::Approx(0.5));
  CHECK(epsilon_star_for(5, 0.5) == doctest::Approx(1.0));  // clamped
  CHECK(epsilon_star_for(5, 5.0) == doctest::Approx(0.0));
}

TEST_CASE("non-regular input is rejected") {
  Graph p3 = Graph::build(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(second_eigenvalue(p3), std::invalid_argument);
}

TEST_CASE("ordered edge count brute force") {
  Graph g = random_regular(10, 3, 4);
  std::vector<int> s{0, 1, 2, 3}, t{2, 3, 4, 5, 6};
  long naive = 0;
  for (int x : s)
    for (int y : t) naive += g.has_edge(x, y) ? 1 : 0;
  CHECK(ordered_edge_count(g, s, t) == naive);
}

TEST_CASE("exhaustive mixing audit matches the serial reference") {
  for (auto [n, d, seed] : {std::tuple{10, 3, 1}, {12, 4, 2}, {14, 5, 3}}) {
    Graph g = random_regular(n, d, seed);
    double lambda = second_eigenvalue(g).lambda;
    MixingAudit fast = mixing_audit(g, lambda, 0, 1);
    MixingAudit slow = mixing_audit_reference(g, lambda);
    CHECK(fast.exhaustive);
    CHECK(fast.pass == slow.pass);
    CHECK(fast.pairs_checked == slow.pairs_checked);
  }
}

TEST_CASE("mixing audit flags a too-small lambda") {
  Graph g = random_regular(12, 4, 9);
  MixingAudit audit = mixing_audit(g, 1e-3, 0, 1);
  CHECK(!audit.pass);
  REQUIRE(audit.witness.has_value());
  // Witness must genuinely violate the inequality.
  const MixingWitness& w = *audit.witness;
  long e = ordered_edge_count(g, w.s, w.t);
  CHECK(e == w.e_st);
  CHECK(std::abs(double(e) - w.expected) > w.bound);
}

TEST_CASE("sampled audit path on larger graphs") {
  Graph g = random_regular(40, 6, 5);
  double lambda = second_eigenvalue(g).lambda;
  MixingAudit audit = mixing_audit(g, lambda, 500, 3);
  CHECK(!audit.exhaustive);
  CHECK(audit.pass);
  CHECK(audit.pairs_checked == 500);
}
