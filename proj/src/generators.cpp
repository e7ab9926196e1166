#include "onefact/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "onefact/rng.hpp"

namespace onefact {

GenModel parse_gen_model(const std::string& name) {
  if (name == "complete") return GenModel::kComplete;
  if (name == "cycle") return GenModel::kCycle;
  if (name == "random-regular") return GenModel::kRandomRegular;
  if (name == "random-bipartite-regular") return GenModel::kBipartiteRegular;
  throw std::invalid_argument("unknown model: " + name);
}

namespace {

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::build(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return Graph::build(n, edges);
}

// One pairing-model sample: shuffle n*d stubs, pair consecutively.
// Returns edges or empty on loop/multi-edge collision.
bool pairing_sample(int n, int d, Rng& rng,
                    std::vector<std::pair<int, int>>& out) {
  std::vector<int> stubs(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k) stubs[static_cast<std::size_t>(v) * d + k] = v;
  rng.shuffle(stubs);
  std::set<std::pair<int, int>> seen;
  out.clear();
  for (std::size_t i = 0; i < stubs.size(); i += 2) {
    int u = stubs[i], v = stubs[i + 1];
    if (u == v) return false;
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) return false;
    out.emplace_back(u, v);
  }
  return true;
}

// Superposition of d random perfect matchings on n vertices (n even).
// Each layer is resampled independently until it avoids the earlier
// layers; whole-sample rejection would be hopeless already at small n.
bool superposition_sample(int n, int d, Rng& rng,
                          std::vector<std::pair<int, int>>& out) {
  std::set<std::pair<int, int>> seen;
  out.clear();
  std::vector<int> perm(n);
  for (int layer = 0; layer < d; ++layer) {
    bool placed = false;
    for (int tries = 0; tries < 200 && !placed; ++tries) {
      for (int i = 0; i < n; ++i) perm[i] = i;
      rng.shuffle(perm);
      std::vector<std::pair<int, int>> layer_edges;
      bool clean = true;
      for (int i = 0; i < n && clean; i += 2) {
        auto key = std::minmax(perm[i], perm[i + 1]);
        if (seen.count(key)) clean = false;
        layer_edges.push_back(key);
      }
      if (!clean) continue;
      for (const auto& e : layer_edges) {
        seen.insert(e);
        out.push_back(e);
      }
      placed = true;
    }
    if (!placed) return false;
  }
  return true;
}

// Raw pairing-model sample kept as a multigraph, then repaired: defective
// pairs (loops, repeated edges) are removed by random double-edge swaps
// that preserve the degree sequence. Whole-sample rejection alone has
// acceptance probability ~exp(-(d-1)/2 - (d-1)^2/4), hopeless already
// around d = 6.
bool pairing_repair_sample(int n, int d, Rng& rng,
                           std::vector<std::pair<int, int>>& out) {
  std::vector<int> stubs(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k) stubs[static_cast<std::size_t>(v) * d + k] = v;
  rng.shuffle(stubs);
  out.clear();
  for (std::size_t i = 0; i < stubs.size(); i += 2)
    out.emplace_back(stubs[i], stubs[i + 1]);

  std::map<std::pair<int, int>, int> mult;
  for (auto& [u, v] : out) ++mult[std::minmax(u, v)];
  auto defective = [&](const std::pair<int, int>& e) {
    return e.first == e.second || mult[std::minmax(e.first, e.second)] > 1;
  };
  const long swap_budget = 400L * out.size();
  for (long step = 0; step < swap_budget; ++step) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (defective(out[i])) bad.push_back(i);
    if (bad.empty()) return true;
    std::size_t i = bad[rng.index(bad.size())];
    std::size_t j = rng.index(out.size());
    if (i == j) continue;
    auto [a, b] = out[i];
    auto [c, e] = out[j];
    if (rng.coin()) std::swap(c, e);
    // Propose (a,c), (b,e); accept only if both are new simple edges.
    if (a == c || b == e) continue;
    auto k1 = std::minmax(a, c), k2 = std::minmax(b, e);
    if (k1 == k2 || mult[k1] > 0 || mult[k2] > 0) continue;
    --mult[std::minmax(a, b)];
    --mult[std::minmax(c, e)];
    ++mult[k1];
    ++mult[k2];
    out[i] = {a, c};
    out[j] = {b, e};
  }
  return false;
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  if (d >= n) throw std::invalid_argument("random-regular requires d < n");
  if ((static_cast<long>(n) * d) % 2 != 0)
    throw std::invalid_argument("n*d must be even");
  Rng rng(seed);
  const int budget = 10 * std::max(1, d * d);
  std::vector<std::pair<int, int>> edges;
  const bool dense = 3 * d > n;
  // Whole-sample rejection first (a few tries), then the swap-repair
  // route; retry cap applies across both.
  for (int attempt = 0; attempt < budget; ++attempt) {
    bool ok;
    if (dense) {
      ok = superposition_sample(n, d, rng, edges);
    } else if (attempt < std::min(budget, 40)) {
      ok = pairing_sample(n, d, rng, edges);
    } else {
      ok = pairing_repair_sample(n, d, rng, edges);
    }
    if (ok) {
      Graph g = Graph::build(n, edges);
      if (g.regular_degree() != d)
        throw std::runtime_error("sampler produced non-regular graph");
      return g;
    }
  }
  throw std::runtime_error("simplicity rejection budget exhausted (n=" +
                           std::to_string(n) + ", d=" + std::to_string(d) +
                           ")");
}

Graph random_bipartite_regular(int n, int d, std::uint64_t seed) {
  if (n % 2 != 0) throw std::invalid_argument("bipartite model needs even n");
  int m = n / 2;
  if (d > m) throw std::invalid_argument("bipartite model needs d <= n/2");
  Rng rng(seed);
  std::vector<int> perm(m);
  // Per-layer rejection first; when d approaches m a fresh permutation
  // avoiding all earlier ones is a near-derangement event, so after the
  // tries run out the layer is completed by a randomized perfect
  // matching on the still-unused pairs (the unused-pair graph is
  // (m - layer)-regular, so one always exists).
  std::vector<std::vector<char>> used(m, std::vector<char>(m, 0));
  std::vector<std::pair<int, int>> edges;
  auto kuhn_layer = [&](std::vector<int>& match_of_a) -> bool {
    std::vector<int> match_of_b(m, -1);
    match_of_a.assign(m, -1);
    std::vector<int> cols(m);
    for (int j = 0; j < m; ++j) cols[j] = j;
    std::vector<char> visited(m, 0);
    std::function<bool(int)> augment = [&](int i) -> bool {
      for (int j : cols) {
        if (used[i][j] || visited[j]) continue;
        visited[j] = 1;
        if (match_of_b[j] < 0 || augment(match_of_b[j])) {
          match_of_b[j] = i;
          match_of_a[i] = j;
          return true;
        }
      }
      return false;
    };
    std::vector<int> rows(m);
    for (int i = 0; i < m; ++i) rows[i] = i;
    rng.shuffle(rows);
    for (int i : rows) {
      rng.shuffle(cols);
      visited.assign(m, 0);
      if (!augment(i)) return false;
    }
    return true;
  };
  for (int layer = 0; layer < d; ++layer) {
    bool placed = false;
    for (int tries = 0; tries < 200 && !placed; ++tries) {
      for (int i = 0; i < m; ++i) perm[i] = i;
      rng.shuffle(perm);
      bool clean = true;
      for (int i = 0; i < m && clean; ++i)
        if (used[i][perm[i]]) clean = false;
      placed = clean;
    }
    if (!placed) {
      if (!kuhn_layer(perm))
        throw std::runtime_error("bipartite layer completion failed");
      placed = true;
    }
    for (int i = 0; i < m; ++i) {
      used[i][perm[i]] = 1;
      edges.push_back({i, m + perm[i]});
    }
  }
  return Graph::build(n, edges);
}

}  // namespace

Graph generate(const GenSpec& spec) {
  switch (spec.model) {
    case GenModel::kComplete:
      return complete_graph(spec.n);
    case GenModel::kCycle:
      return cycle_graph(spec.n);
    case GenModel::kRandomRegular:
      return random_regular(spec.n, spec.d, spec.seed);
    case GenModel::kBipartiteRegular:
      return random_bipartite_regular(spec.n, spec.d, spec.seed);
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace onefact
