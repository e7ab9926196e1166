#include "onefact/completion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "onefact/rng.hpp"

namespace onefact {

namespace {

// For each host vertex, number of h-neighbors covered by `covered`.
// Returns the first vertex exceeding `bound`, or -1.
int bound_violation(const BipartiteView& h, const std::vector<char>& covered,
                    int bound) {
  std::vector<int> cnt(h.host->vertex_count(), 0);
  for (int id : h.crossing) {
    auto [u, v] = h.host->edge(id);
    if (covered[v]) ++cnt[u];
    if (covered[u]) ++cnt[v];
  }
  for (std::size_t v = 0; v < cnt.size(); ++v)
    if (cnt[v] > bound) return int(v);
  return -1;
}

std::vector<char> cover_of(const Graph& g, const std::vector<int>& edge_ids) {
  std::vector<char> covered(g.vertex_count(), 0);
  for (int id : edge_ids) {
    covered[g.edge(id).first] = 1;
    covered[g.edge(id).second] = 1;
  }
  return covered;
}

}  // namespace

Matching bounded_submatching(const Matching& m, int size,
                             const BipartiteView& h, int bound, int retries,
                             std::uint64_t seed) {
  if (size > m.size() || size < 0)
    throw std::invalid_argument("submatching size out of range");
  const Graph& g = *h.host;
  int witness = -1;
  for (int attempt = 0; attempt < std::max(retries, 1); ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    Matching sub;
    for (int idx : rng.sample(m.size(), size))
      sub.edge_ids.push_back(m.edge_ids[idx]);
    sub.normalize();
    int v = bound_violation(h, cover_of(g, sub.edge_ids), bound);
    if (v < 0) return sub;
    witness = v;
  }
  throw std::runtime_error("bounded_submatching retries exhausted; vertex " +
                           std::to_string(witness) + " over bound " +
                           std::to_string(bound));
}

std::vector<Matching> split_matching(const Matching& m, int k,
                                     const BipartiteView& h, int bound,
                                     int retries, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k == 1 || 2 * m.size() < bound) return {m};
  const Graph& g = *h.host;
  for (int attempt = 0; attempt < std::max(retries, 1); ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<Matching> pieces(k);
    std::vector<int> labels(k);
    for (int base = 0; base < m.size(); base += k) {
      for (int i = 0; i < k; ++i) labels[i] = i;
      rng.shuffle(labels);
      for (int i = 0; base + i < m.size() && i < k; ++i)
        pieces[labels[i]].edge_ids.push_back(m.edge_ids[base + i]);
    }
    bool ok = true;
    for (auto& p : pieces) {
      p.normalize();
      if (!p.edge_ids.empty() &&
          bound_violation(h, cover_of(g, p.edge_ids), bound) >= 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<Matching> out;
      for (auto& p : pieces)
        if (!p.edge_ids.empty()) out.push_back(std::move(p));
      return out;
    }
  }
  throw std::runtime_error("split_matching retries exhausted");
}

namespace {

// Residual internal subgraph of one side, plus local->host edge id map.
struct InternalGraph {
  Graph graph;
  std::vector<int> host_eid;
  int edge_count = 0;
  int max_degree = 0;
};

InternalGraph internal_side(const Graph& r, const std::vector<int>& side,
                            const std::vector<char>& alive, int which) {
  InternalGraph out;
  std::vector<std::pair<int, int>> edges;
  for (int id = 0; id < r.edge_count(); ++id) {
    auto [u, v] = r.edge(id);
    if (alive[id] && side[u] == which && side[v] == which) {
      edges.push_back({u, v});
      out.host_eid.push_back(id);
    }
  }
  out.graph = Graph::build(r.vertex_count(), edges);
  out.edge_count = int(edges.size());
  out.max_degree = out.graph.max_degree();
  return out;
}

std::vector<Matching> internal_classes(const InternalGraph& ig) {
  std::vector<Matching> out;
  if (ig.edge_count == 0) return out;
  EdgeColoring col = vizing_edge_coloring(ig.graph);
  for (Matching& cls : col.classes(ig.graph)) {
    if (cls.edge_ids.empty()) continue;
    Matching host_cls;
    for (int local : cls.edge_ids) host_cls.edge_ids.push_back(ig.host_eid[local]);
    host_cls.normalize();
    out.push_back(std::move(host_cls));
  }
  return out;
}

}  // namespace

OneFactorization absorb_internal_edges(const Graph& r_graph,
                                       const BipartiteView& h,
                                       const CompletionConfig& cfg,
                                       std::uint64_t seed) {
  const int n = r_graph.vertex_count();
  auto reg = r_graph.regular_degree();
  if (!reg) throw std::invalid_argument("absorption input must be regular");
  const int r1 = *reg;
  const std::vector<int>& side = h.side;
  if (h.host != &r_graph || int(side.size()) != n)
    throw std::invalid_argument("view does not describe the input graph");

  std::vector<char> alive(r_graph.edge_count(), 1);
  std::vector<char> crossing_alive(r_graph.edge_count(), 0);
  for (int id = 0; id < r_graph.edge_count(); ++id) {
    auto [u, v] = r_graph.edge(id);
    if (side[u] != side[v]) crossing_alive[id] = 1;
  }

  OneFactorization out;
  InternalGraph ia = internal_side(r_graph, side, alive, 0);
  InternalGraph ib = internal_side(r_graph, side, alive, 1);
  if (ia.edge_count != ib.edge_count)
    throw std::runtime_error("internal edge counts differ: " +
                             std::to_string(ia.edge_count) + " vs " +
                             std::to_string(ib.edge_count));
  const int r2 = std::max(ia.max_degree, ib.max_degree);
  const int max_rounds =
      cfg.max_rounds > 0 ? cfg.max_rounds : ia.edge_count + r1;
  const int base_bound = std::max(1, int(std::ceil(cfg.beta * r1)));

  int round = 0;
  while (ia.edge_count > 0) {
    if (round++ >= max_rounds)
      throw std::runtime_error("absorption round cap exceeded");
    if (int(out.classes.size()) >= r1)
      throw std::runtime_error(
          "internal edges remain after r1 emitted matchings");

    std::vector<Matching> a_cls = internal_classes(ia);
    std::vector<Matching> b_cls = internal_classes(ib);
    int bound = base_bound;
    if (cfg.split_k > 1) {
      auto split_all = [&](std::vector<Matching>& cls, std::uint64_t s) {
        std::vector<Matching> fine;
        for (std::size_t i = 0; i < cls.size(); ++i)
          for (Matching& piece : split_matching(cls[i], cfg.split_k, h, bound,
                                                cfg.submatch_retries,
                                                derive_seed(s, i)))
            fine.push_back(std::move(piece));
        cls = std::move(fine);
      };
      split_all(a_cls, derive_seed(seed, 7000 + round));
      split_all(b_cls, derive_seed(seed, 8000 + round));
    }
    auto pairs = equalize_matching_pairs(a_cls, b_cls);
    std::sort(pairs.begin(), pairs.end(), [](const auto& p, const auto& q) {
      return p.first.size() > q.first.size();
    });
    const Matching& pa = pairs.front().first;
    const Matching& pb = pairs.front().second;

    // Carve size: the analysis formula, raised so the remaining emission
    // budget still suffices to exhaust the internal edges.
    int rounds_left = r1 - int(out.classes.size());
    int s = int(cfg.alpha * ia.edge_count / (2.0 * std::max(r2, 1)));
    s = std::max(s, (ia.edge_count + rounds_left - 1) / std::max(rounds_left, 1));
    s = std::max(1, std::min(s, pa.size()));

    // Carve on both sides and extend to a perfect matching across the
    // remaining vertices; on failure resample, then relax the degree bound.
    Matching emitted;
    bool done = false;
    int carve_failures = 0, ext_failures = 0, best_deficit = n;
    for (int escalation = 0; escalation < 4 && !done; ++escalation) {
      for (int attempt = 0; attempt < cfg.submatch_retries && !done;
           ++attempt) {
        std::uint64_t s0 =
            derive_seed(seed, round * 1024 + escalation * 128 + attempt);
        Matching sub_a, sub_b;
        try {
          sub_a = bounded_submatching(pa, s, h, bound, cfg.submatch_retries,
                                      derive_seed(s0, 1));
          sub_b = bounded_submatching(pb, s, h, bound, cfg.submatch_retries,
                                      derive_seed(s0, 2));
        } catch (const std::runtime_error&) {
          ++carve_failures;
          continue;  // this bound is too tight for the pair; escalate
        }
        std::vector<char> active(n, 1);
        for (int id : sub_a.edge_ids) {
          active[r_graph.edge(id).first] = 0;
          active[r_graph.edge(id).second] = 0;
        }
        for (int id : sub_b.edge_ids) {
          active[r_graph.edge(id).first] = 0;
          active[r_graph.edge(id).second] = 0;
        }
        Matching ext =
            max_matching_restricted(r_graph, side, crossing_alive, active);
        int deficit = n - 2 * (ext.size() + sub_a.size() + sub_b.size());
        if (deficit != 0) {
          ++ext_failures;
          best_deficit = std::min(best_deficit, deficit);
          continue;
        }
        emitted = ext;
        emitted.edge_ids.insert(emitted.edge_ids.end(),
                                sub_a.edge_ids.begin(), sub_a.edge_ids.end());
        emitted.edge_ids.insert(emitted.edge_ids.end(),
                                sub_b.edge_ids.begin(), sub_b.edge_ids.end());
        emitted.normalize();
        done = true;
      }
      bound = std::min(2 * bound, r1);
    }
    if (!done)
      throw std::runtime_error(
          "perfect-matching extension failed in absorption round " +
          std::to_string(round) + " (s=" + std::to_string(s) + ", pair=" +
          std::to_string(pa.size()) + ", internal=" +
          std::to_string(ia.edge_count) + ", carve_failures=" +
          std::to_string(carve_failures) + ", ext_failures=" +
          std::to_string(ext_failures) + ", best_deficit=" +
          std::to_string(best_deficit) + ")");

    for (int id : emitted.edge_ids) {
      alive[id] = 0;
      crossing_alive[id] = 0;
    }
    out.classes.push_back(std::move(emitted));
    int prev = ia.edge_count;
    ia = internal_side(r_graph, side, alive, 0);
    ib = internal_side(r_graph, side, alive, 1);
    if (ia.edge_count >= prev)
      throw std::runtime_error("absorption made no progress");
    if (ia.edge_count != ib.edge_count)
      throw std::runtime_error("internal edge counts diverged");
  }

  // Regular bipartite remainder.
  BipartiteView rem;
  rem.host = &r_graph;
  rem.side = side;
  for (int v = 0; v < n; ++v) (side[v] == 0 ? rem.a : rem.b).push_back(v);
  for (int id = 0; id < r_graph.edge_count(); ++id)
    if (alive[id]) rem.crossing.push_back(id);
  if (!rem.crossing.empty()) {
    auto rr = rem.regular_degree();
    if (!rr)
      throw std::runtime_error("bipartite remainder is not regular");
    OneFactorization tail = bipartite_one_factorization(rem);
    for (auto& cls : tail.classes) out.classes.push_back(std::move(cls));
  }
  if (int(out.classes.size()) != r1)
    throw std::runtime_error("absorption produced " +
                             std::to_string(out.classes.size()) +
                             " classes, expected " + std::to_string(r1));
  return out;
}

}  // namespace onefact
