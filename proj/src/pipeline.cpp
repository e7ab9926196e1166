#include "onefact/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "onefact/rng.hpp"

namespace onefact {

namespace {

// 2-coloring by BFS; empty when some component has an odd cycle. For a
// d-regular bipartite graph (d >= 1) every component is balanced on its
// own, so any valid coloring is globally balanced.
std::vector<int> bipartite_sides(const Graph& g) {
  std::vector<int> side(g.vertex_count(), -1);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& h : g.neighbors(u)) {
        if (side[h.to] < 0) {
          side[h.to] = 1 - side[u];
          q.push(h.to);
        } else if (side[h.to] == side[u]) {
          return {};
        }
      }
    }
  }
  return side;
}

struct AttemptFailure : std::runtime_error {
  std::string stage;
  AttemptFailure(std::string st, const std::string& what)
      : std::runtime_error(what), stage(std::move(st)) {}
};

// Piece subgraph on the full vertex set, with local->host edge id map.
struct HostedGraph {
  Graph graph;
  std::vector<int> host_eid;
};

HostedGraph hosted_subgraph(const Graph& g, const std::vector<int>& eids) {
  HostedGraph out;
  std::vector<std::pair<int, int>> edges;
  for (int id : eids) edges.push_back(g.edge(id));
  out.graph = Graph::build(g.vertex_count(), edges);
  out.host_eid = eids;
  return out;
}

// One full attempt with t > 1 pieces. Throws AttemptFailure.
OneFactorization attempt_full(const Graph& g, const PipelineConfig& cfg,
                              int t, std::uint64_t seed, PipelineStats* stats) {
  const int d = *g.regular_degree();

  std::vector<Bipartition> parts;
  try {
    bool sparse = cfg.force_mode == PipelineMode::kSparse ||
                  (cfg.force_mode == PipelineMode::kAuto && sparse_applicable(g));
    parts = sparse ? balanced_bipartitions_sparse(g, t, cfg.partition,
                                                  derive_seed(seed, 1))
                   : balanced_bipartitions_dense(g, t, cfg.partition,
                                                 derive_seed(seed, 1));
  } catch (const std::exception& e) {
    throw AttemptFailure("partition", e.what());
  }

  PartitionPlan plan;
  try {
    plan = assign_edges(g, parts, derive_seed(seed, 2));
  } catch (const std::exception& e) {
    throw AttemptFailure("partition", e.what());
  }

  // Uniform r across pieces, decremented once if d - r t is odd (t odd, so
  // one decrement fixes parity).
  std::vector<BipartiteView> views;
  views.reserve(t);
  int r = d;
  for (int i = 0; i < t; ++i) {
    views.push_back(plan.piece_view(g, i));
    r = std::min(r, max_feasible_factor(views.back()).first);
  }
  if (r > 0 && (d - r * t) % 2 != 0) --r;
  if (r <= 0) throw AttemptFailure("factor", "degenerate piece factor (r*=0)");
  stats->r_star = r;

  std::vector<Factor> factors;
  std::vector<int> union_w;
  for (int i = 0; i < t; ++i) {
    auto res = r_factor(views[i], r);
    if (!res.factor)
      throw AttemptFailure("factor", "r-factor vanished on re-extraction");
    factors.push_back(*res.factor);
    union_w.insert(union_w.end(), res.factor->edge_ids.begin(),
                   res.factor->edge_ids.end());
  }

  auto [gp, old_to_new] = g.subtract(union_w);
  std::vector<int> new_to_old(gp.edge_count(), -1);
  for (std::size_t id = 0; id < old_to_new.size(); ++id)
    if (old_to_new[id] >= 0) new_to_old[old_to_new[id]] = int(id);

  const int rp = d - r * t;
  TwoFactorization tf;
  if (rp > 0) {
    try {
      tf = two_factorization(gp);
    } catch (const std::exception& e) {
      throw AttemptFailure("two_factorization", e.what());
    }
  }

  // Round-robin 2-factors into t groups; group degrees differ by <= 2.
  std::vector<std::vector<int>> group_edges(t);  // host edge ids
  stats->group_degrees.assign(t, 0);
  for (std::size_t j = 0; j < tf.factors.size(); ++j) {
    int i = int(j) % t;
    stats->group_degrees[i] += 2;
    for (int local : tf.factors[j])
      group_edges[i].push_back(new_to_old[local]);
  }

  OneFactorization out;
  for (int i = 0; i < t; ++i) {
    std::vector<int> piece_eids = factors[i].edge_ids;
    piece_eids.insert(piece_eids.end(), group_edges[i].begin(),
                      group_edges[i].end());
    HostedGraph ri = hosted_subgraph(g, piece_eids);
    BipartiteView hi;
    hi.host = &ri.graph;
    hi.side = plan.bipartitions[i].side;
    for (int v = 0; v < g.vertex_count(); ++v)
      (hi.side[v] == 0 ? hi.a : hi.b).push_back(v);
    for (int id = 0; id < ri.graph.edge_count(); ++id) {
      auto [u, v] = ri.graph.edge(id);
      if (hi.side[u] != hi.side[v]) hi.crossing.push_back(id);
    }
    CompletionConfig ccfg = cfg.completion;
    ccfg.alpha = cfg.alpha;
    OneFactorization local;
    try {
      local = absorb_internal_edges(ri.graph, hi, ccfg, derive_seed(seed, 100 + i));
    } catch (const std::exception& e) {
      throw AttemptFailure("completion", e.what());
    }
    for (auto& cls : local.classes) {
      Matching m;
      for (int id : cls.edge_ids) m.edge_ids.push_back(ri.host_eid[id]);
      m.normalize();
      out.classes.push_back(std::move(m));
    }
  }
  return out;
}

// Balanced bipartition biased toward a large cut: random start, then
// hill-climbing side swaps. Fewer internal edges means smaller carves per
// absorption round and a denser crossing graph for the extensions.
std::vector<int> improved_bipartition(const Graph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  Rng rng(seed);
  std::vector<int> side(n, 1);
  for (int v : rng.sample(n, n / 2)) side[v] = 0;
  // cross_gain[v]: how much the cut grows if v alone switched sides.
  std::vector<int> gain(n);
  auto recompute = [&](int v) {
    int same = 0, other = 0;
    for (const auto& h : g.neighbors(v))
      (side[h.to] == side[v] ? same : other)++;
    gain[v] = same - other;
  };
  for (int v = 0; v < n; ++v) recompute(v);
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  for (int pass = 0; pass < 64; ++pass) {
    bool moved = false;
    rng.shuffle(order);
    for (int u : order) {
      if (side[u] != 0) continue;
      int best = -1, best_delta = 0;
      for (int v : order) {
        if (side[v] != 1) continue;
        int delta = gain[u] + gain[v] - 2 * (g.has_edge(u, v) ? 1 : 0);
        if (delta > best_delta) {
          best_delta = delta;
          best = v;
        }
      }
      if (best >= 0) {
        side[u] = 1;
        side[best] = 0;
        moved = true;
        for (const auto& h : g.neighbors(u)) recompute(h.to);
        for (const auto& h : g.neighbors(best)) recompute(h.to);
        recompute(u);
        recompute(best);
      }
    }
    if (!moved) break;
  }
  return side;
}

// Single-bipartition route: R is the whole graph, everything rides on
// absorption. Even-numbered attempts hill-climb the cut; odd attempts use
// a plain random balanced bipartition for diversity.
OneFactorization attempt_direct(const Graph& g, const PipelineConfig& cfg,
                                std::uint64_t seed, bool maximize_cut) {
  std::vector<int> side;
  if (maximize_cut) {
    side = improved_bipartition(g, derive_seed(seed, 1));
  } else {
    try {
      side = balanced_bipartitions_dense(g, 1, cfg.partition,
                                         derive_seed(seed, 1))[0]
                 .side;
    } catch (const std::exception& e) {
      throw AttemptFailure("partition", e.what());
    }
  }
  BipartiteView h;
  h.host = &g;
  h.side = side;
  for (int v = 0; v < g.vertex_count(); ++v)
    (h.side[v] == 0 ? h.a : h.b).push_back(v);
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [u, v] = g.edge(id);
    if (h.side[u] != h.side[v]) h.crossing.push_back(id);
  }
  CompletionConfig ccfg = cfg.completion;
  ccfg.alpha = cfg.alpha;
  try {
    return absorb_internal_edges(g, h, ccfg, derive_seed(seed, 100));
  } catch (const std::exception& e) {
    throw AttemptFailure("completion", e.what());
  }
}

// Random Euler orientation of a 4-regular graph, then a 2+2 split of the
// out/in double cover with random phase per cover cycle: returns two
// edge-disjoint 2-factors covering the input.
std::pair<std::vector<int>, std::vector<int>> random_resplit(const Graph& g4,
                                                             Rng& rng) {
  const int n = g4.vertex_count();
  const int m = g4.edge_count();
  std::vector<std::vector<HalfEdge>> adj(n);
  for (int v = 0; v < n; ++v) {
    adj[v] = g4.neighbors(v);
    rng.shuffle(adj[v]);
  }
  std::vector<int> from(m, -1), to(m, -1);
  std::vector<std::size_t> ptr(n, 0);
  std::vector<char> used(m, 0);
  for (int s = 0; s < n; ++s) {
    if (ptr[s] >= adj[s].size()) continue;
    // Hierholzer; the circuit comes out in reverse pop order.
    std::vector<std::pair<int, int>> stack{{s, -1}}, circuit;
    while (!stack.empty()) {
      auto [v, arrival] = stack.back();
      while (ptr[v] < adj[v].size() && used[adj[v][ptr[v]].edge_id]) ++ptr[v];
      if (ptr[v] == adj[v].size()) {
        circuit.push_back({v, arrival});
        stack.pop_back();
      } else {
        const HalfEdge& h = adj[v][ptr[v]];
        used[h.edge_id] = 1;
        stack.push_back({h.to, h.edge_id});
      }
    }
    for (std::size_t i = circuit.size(); i-- > 1;) {
      int e = circuit[i - 1].second;
      from[e] = circuit[i].first;
      to[e] = circuit[i - 1].first;
    }
  }
  std::vector<std::array<int, 2>> outs(n, {-1, -1}), ins(n, {-1, -1});
  for (int e = 0; e < m; ++e) {
    outs[from[e]][outs[from[e]][0] < 0 ? 0 : 1] = e;
    ins[to[e]][ins[to[e]][0] < 0 ? 0 : 1] = e;
  }
  auto other = [](const std::array<int, 2>& pair, int e) {
    return pair[0] == e ? pair[1] : pair[0];
  };
  std::vector<int> label(m, -1);
  for (int e0 = 0; e0 < m; ++e0) {
    if (label[e0] >= 0) continue;
    int e = e0, lab = rng.coin() ? 1 : 0;
    for (;;) {
      label[e] = lab;
      int f = other(ins[to[e]], e);
      if (label[f] >= 0) break;
      label[f] = 1 - lab;
      int gnext = other(outs[from[f]], f);
      if (label[gnext] >= 0) break;
      e = gnext;
      lab = 1 - label[f];
    }
  }
  std::pair<std::vector<int>, std::vector<int>> split;
  for (int e = 0; e < m; ++e)
    (label[e] == 0 ? split.first : split.second).push_back(e);
  return split;
}

// Traverses a 2-regular spanning edge set; alternating split into two
// perfect matchings, or nullopt if some cycle is odd.
std::optional<std::pair<Matching, Matching>> split_even_factor(
    const Graph& g, const std::vector<int>& eids) {
  const int n = g.vertex_count();
  std::vector<std::array<int, 2>> inc(n, {-1, -1});
  for (int e : eids) {
    auto [u, v] = g.edge(e);
    inc[u][inc[u][0] < 0 ? 0 : 1] = e;
    inc[v][inc[v][0] < 0 ? 0 : 1] = e;
  }
  std::vector<char> seen(g.edge_count(), 0);
  Matching m0, m1;
  for (int e0 : eids) {
    if (seen[e0]) continue;
    int e = e0, v = g.edge(e0).first, lab = 0;
    int len = 0;
    while (!seen[e]) {
      seen[e] = 1;
      (lab == 0 ? m0 : m1).edge_ids.push_back(e);
      ++len;
      v = g.edge(e).first == v ? g.edge(e).second : g.edge(e).first;
      e = inc[v][0] == e ? inc[v][1] : inc[v][0];
      lab = 1 - lab;
    }
    if (len % 2 != 0) return std::nullopt;
  }
  m0.normalize();
  m1.normalize();
  return std::make_pair(std::move(m0), std::move(m1));
}

// Parity-walk route: seed perfect matching when d is odd, 2-factorize the
// even-degree rest, then repeatedly merge a 2-factor containing an odd
// cycle with a random partner and resplit their union until every
// 2-factor is all-even; each then yields two perfect matchings.
OneFactorization attempt_parity(const Graph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  const int d = *g.regular_degree();
  Rng rng(derive_seed(seed, 3));
  OneFactorization out;
  std::vector<int> removed;
  if (d % 2 != 0) {
    bool found = false;
    for (int trial = 0; trial < 8 && !found; ++trial) {
      std::vector<int> side;
      if (trial % 2 == 0) {
        side = improved_bipartition(g, derive_seed(seed, 10 + trial));
      } else {
        side.assign(n, 1);
        Rng srng(derive_seed(seed, 20 + trial));
        for (int v : srng.sample(n, n / 2)) side[v] = 0;
      }
      BipartiteView view = BipartiteView::from_sides(g, side);
      Matching m = max_bipartite_matching(view);
      if (2 * m.size() == n) {
        removed = m.edge_ids;
        out.classes.push_back(std::move(m));
        found = true;
      }
    }
    if (!found)
      throw AttemptFailure("parity", "no seed perfect matching found");
  }

  auto [g2, old_to_new] = g.subtract(removed);
  std::vector<std::vector<int>> factors;  // host edge ids
  if (g2.edge_count() > 0) {
    std::vector<int> new_to_old(g2.edge_count(), -1);
    for (std::size_t id = 0; id < old_to_new.size(); ++id)
      if (old_to_new[id] >= 0) new_to_old[old_to_new[id]] = int(id);
    TwoFactorization tf;
    try {
      tf = two_factorization(g2);
    } catch (const std::exception& e) {
      throw AttemptFailure("parity", e.what());
    }
    for (auto& f : tf.factors) {
      std::vector<int> host;
      for (int local : f) host.push_back(new_to_old[local]);
      factors.push_back(std::move(host));
    }
  }

  const long budget = 400L * std::max<std::size_t>(1, factors.size());
  for (long step = 0;; ++step) {
    std::vector<int> odd;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (!split_even_factor(g, factors[i])) odd.push_back(int(i));
    if (odd.empty()) break;
    if (factors.size() < 2 || step >= budget)
      throw AttemptFailure("parity", "odd cycles persist in 2-factors");
    // Merge two odd factors when possible; otherwise sacrifice a random
    // even partner.
    int bad = odd[rng.index(odd.size())];
    int partner;
    if (odd.size() >= 2) {
      do {
        partner = odd[rng.index(odd.size())];
      } while (partner == bad);
    } else {
      partner = rng.index(factors.size() - 1);
      if (partner >= bad) ++partner;
    }
    std::vector<int> ueids = factors[bad];
    ueids.insert(ueids.end(), factors[partner].begin(),
                 factors[partner].end());
    HostedGraph u = hosted_subgraph(g, ueids);
    auto [f1, f2] = random_resplit(u.graph, rng);
    factors[bad].clear();
    for (int e : f1) factors[bad].push_back(u.host_eid[e]);
    factors[partner].clear();
    for (int e : f2) factors[partner].push_back(u.host_eid[e]);
  }
  for (auto& f : factors) {
    auto split = split_even_factor(g, f);
    out.classes.push_back(std::move(split->first));
    out.classes.push_back(std::move(split->second));
  }
  return out;
}

}  // namespace

FactorizeOutcome factorize(const Graph& g, const PipelineConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  auto finish = [&](FactorizeOutcome& o) {
    o.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return o;
  };

  auto reg = g.regular_degree();
  if (!reg) throw std::invalid_argument("input graph is not regular");
  const int d = *reg;
  if (g.vertex_count() % 2 != 0 && d > 0)
    throw std::invalid_argument("odd vertex count admits no perfect matching");
  if (cfg.t < 1 || cfg.t % 2 == 0)
    throw std::invalid_argument("t must be odd and >= 1");
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  if (!(cfg.alpha > 0 && cfg.alpha <= 0.1))
    throw std::invalid_argument("alpha must lie in (0, 1/10]");

  FactorizeOutcome out;
  out.stats.t_used = cfg.t;
  out.stats.target_r_bar =
      d > 0 ? (double(d) / cfg.t) * (1.0 - 16.0 / std::cbrt(double(cfg.t))) : 0;
  if (cfg.compute_spectral && d > 0) out.spectral = second_eigenvalue(g);

  if (d == 0) {
    out.factorization = OneFactorization{};
    return finish(out);
  }

  // Bipartite shortcut: peel perfect matchings directly.
  if (auto side = bipartite_sides(g); !side.empty()) {
    BipartiteView v = BipartiteView::from_sides(g, side);
    try {
      out.factorization = bipartite_one_factorization(v);
      out.stats.t_used = 0;
      return finish(out);
    } catch (const std::exception& e) {
      out.stage = "bipartite";
      out.detail = e.what();
      return finish(out);
    }
  }

  std::string last_stage = "factor", last_detail = "no attempt executed";
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    out.stats.attempts = attempt + 1;
    std::uint64_t seed = derive_seed(cfg.seed, attempt);
    bool full = cfg.t > 1 && attempt < cfg.full_attempts;
    int route = full ? -1 : (attempt - (cfg.t > 1 ? cfg.full_attempts : 0)) % 3;
    try {
      OneFactorization f =
          full ? attempt_full(g, cfg, cfg.t, seed, &out.stats)
          : route != 2 ? attempt_parity(g, seed)
                       : attempt_direct(g, cfg, seed, attempt % 2 == 0);
      VerifyVerdict v = verify_factorization(g, f);
      if (!v.accept) {
        last_stage = "verify";
        last_detail = v.violation;
        continue;
      }
      out.stats.t_used = full ? cfg.t : 1;
      out.factorization = std::move(f);
      return finish(out);
    } catch (const AttemptFailure& e) {
      last_stage = e.stage;
      last_detail = e.what();
    }
  }
  out.stage = last_stage;
  out.detail = last_detail;
  return finish(out);
}

VerifyVerdict verify_factorization(const Graph& g, const OneFactorization& f) {
  auto fail = [](const std::string& v) { return VerifyVerdict{false, v}; };
  auto reg = g.regular_degree();
  if (!reg) return fail("host graph is not regular");
  const int d = *reg;
  if (int(f.classes.size()) != d)
    return fail("class count " + std::to_string(f.classes.size()) +
                " != degree " + std::to_string(d));
  std::vector<int> used_by(g.edge_count(), -1);
  for (std::size_t k = 0; k < f.classes.size(); ++k) {
    std::vector<char> covered(g.vertex_count(), 0);
    for (int id : f.classes[k].edge_ids) {
      if (id < 0 || id >= g.edge_count())
        return fail("class " + std::to_string(k) + " references edge id " +
                    std::to_string(id));
      if (used_by[id] >= 0)
        return fail("edge " + std::to_string(id) + " in classes " +
                    std::to_string(used_by[id]) + " and " + std::to_string(k));
      used_by[id] = int(k);
      auto [u, v] = g.edge(id);
      if (covered[u] || covered[v])
        return fail("class " + std::to_string(k) + " doubly covers vertex " +
                    std::to_string(covered[u] ? u : v));
      covered[u] = covered[v] = 1;
    }
    for (int u = 0; u < g.vertex_count(); ++u)
      if (!covered[u])
        return fail("class " + std::to_string(k) + " misses vertex " +
                    std::to_string(u));
  }
  for (int id = 0; id < g.edge_count(); ++id)
    if (used_by[id] < 0)
      return fail("edge " + std::to_string(id) + " unassigned");
  return {};
}

BoundReport counting_bounds(int n, int d, double epsilon,
                            std::optional<int> k) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even, >= 2");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (!(epsilon > 0 && epsilon < 1))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  BoundReport rep;
  const double half_edges = double(d) * n / 2.0;
  rep.log_lower = half_edges * std::log((1.0 - epsilon) * d / (2.0 * M_E * M_E));
  rep.log_upper = half_edges * std::log(double(d) / (M_E * M_E));
  if (k) {
    if (*k < 1) throw std::invalid_argument("k must be >= 1");
    rep.log_schrijver =
        *k * (2.0 * std::lgamma(d + 1.0) - d * std::log(double(d)));
  }
  return rep;
}

void write_factorization(const Graph& g, const OneFactorization& f,
                         std::ostream& out,
                         const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  std::vector<int> class_of(g.edge_count(), -1);
  for (std::size_t k = 0; k < f.classes.size(); ++k)
    for (int id : f.classes[k].edge_ids) class_of[id] = int(k);
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [u, v] = g.edge(id);
    out << u << " " << v << " " << class_of[id] << "\n";
  }
}

OneFactorization read_factorization(std::istream& in, const Graph& g,
                                    std::string* problem) {
  OneFactorization f;
  auto note = [&](const std::string& p) {
    if (problem && problem->empty()) *problem = p;
  };
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int u, v, k;
    if (!(row >> u >> v >> k))
      throw std::invalid_argument("malformed factorization row: " + line);
    if (k < 0) throw std::invalid_argument("negative class index: " + line);
    int id = -1;
    if (u >= 0 && v >= 0 && u < g.vertex_count() && v < g.vertex_count())
      for (const auto& h : g.neighbors(u))
        if (h.to == v) {
          id = h.edge_id;
          break;
        }
    if (id < 0) {
      note("row references a non-edge: " + line);
      continue;
    }
    if (int(f.classes.size()) <= k) f.classes.resize(k + 1);
    f.classes[k].edge_ids.push_back(id);
  }
  for (auto& cls : f.classes) cls.normalize();
  return f;
}

}  // namespace onefact
