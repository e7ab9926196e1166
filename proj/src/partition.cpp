#include "onefact/partition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "onefact/rng.hpp"

namespace onefact {

BipartiteView PartitionPlan::piece_view(const Graph& g, int i) const {
  BipartiteView v;
  v.host = &g;
  v.side = bipartitions[i].side;
  for (int u = 0; u < g.vertex_count(); ++u)
    (v.side[u] == 0 ? v.a : v.b).push_back(u);
  for (int id = 0; id < g.edge_count(); ++id)
    if (piece_of_edge[id] == i) v.crossing.push_back(id);
  return v;
}

namespace {

struct WindowCheck {
  bool ok = true;
  double worst = 0;  // largest deviation from the window center
  std::string what;
};

// (R1): in every crossing graph G_i, all degrees within d/2 +- slack*d^(2/3).
WindowCheck check_r1(const Graph& g, const std::vector<Bipartition>& parts,
                     double slack) {
  const int d = *g.regular_degree();
  const double window = slack * std::pow(double(d), 2.0 / 3.0);
  WindowCheck res;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<int> deg(g.vertex_count(), 0);
    for (const auto& [u, v] : g.edges())
      if (parts[i].side[u] != parts[i].side[v]) {
        ++deg[u];
        ++deg[v];
      }
    for (int u = 0; u < g.vertex_count(); ++u) {
      double dev = std::abs(deg[u] - d / 2.0);
      res.worst = std::max(res.worst, dev);
      if (dev > window && res.ok) {
        res.ok = false;
        res.what = "(R1) vertex " + std::to_string(u) + " piece " +
                   std::to_string(i) + " crossing degree " +
                   std::to_string(deg[u]);
      }
    }
  }
  return res;
}

// (R2): every |C(e)| within t/2 +- slack*t^(2/3).
WindowCheck check_r2(const Graph& g, const std::vector<Bipartition>& parts,
                     double slack) {
  const int t = int(parts.size());
  const double window = slack * std::pow(double(t), 2.0 / 3.0);
  WindowCheck res;
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [u, v] = g.edge(id);
    int c = 0;
    for (const auto& p : parts) c += p.side[u] != p.side[v];
    double dev = std::abs(c - t / 2.0);
    res.worst = std::max(res.worst, dev);
    if (dev > window && res.ok) {
      res.ok = false;
      res.what = "(R2) edge " + std::to_string(id) + " |C(e)|=" +
                 std::to_string(c);
    }
  }
  return res;
}

}  // namespace

std::vector<Bipartition> balanced_bipartitions_dense(const Graph& g, int t,
                                                     const PartitionConfig& cfg,
                                                     std::uint64_t seed) {
  const int n = g.vertex_count();
  if (n % 2 != 0) throw std::invalid_argument("n must be even");
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (!g.regular_degree()) throw std::invalid_argument("graph not regular");

  std::string last_violation;
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<Bipartition> parts(t);
    for (auto& p : parts) {
      p.side.assign(n, 1);
      for (int v : rng.sample(n, n / 2)) p.side[v] = 0;
    }
    auto r1 = check_r1(g, parts, cfg.slack);
    auto r2 = check_r2(g, parts, cfg.slack);
    if (r1.ok && r2.ok) return parts;
    last_violation = !r1.ok ? r1.what : r2.what;
  }
  throw std::runtime_error("dense bipartition retries exhausted: " +
                           last_violation);
}

bool sparse_applicable(const Graph& g) {
  auto d = g.regular_degree();
  return d && 2LL * (*d) * (*d) <= g.vertex_count();
}

std::vector<Bipartition> balanced_bipartitions_sparse(
    const Graph& g, int t, const PartitionConfig& cfg, std::uint64_t seed) {
  const int n = g.vertex_count();
  if (n % 2 != 0) throw std::invalid_argument("n must be even");
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (!g.regular_degree()) throw std::invalid_argument("graph not regular");

  // Auxiliary graph: xy is an edge iff x,y are non-adjacent and share no
  // neighbor in g.
  std::vector<std::pair<int, int>> aux_edges;
  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u) {
    for (const auto& h : g.neighbors(u)) {
      conflict[u][h.to] = 1;
      for (const auto& h2 : g.neighbors(h.to))
        if (h2.to != u) conflict[u][h2.to] = 1;
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!conflict[u][v]) aux_edges.emplace_back(u, v);
  Graph aux = Graph::build(n, aux_edges);
  if (aux.min_degree() < n / 2)
    throw std::invalid_argument(
        "auxiliary graph min degree below n/2; use the dense path");
  Matching pm = min_degree_perfect_matching(aux);

  std::string last_violation;
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<Bipartition> parts(t);
    for (auto& p : parts) {
      p.side.assign(n, -1);
      for (int id : pm.edge_ids) {
        auto [x, y] = aux.edge(id);
        int s = rng.coin() ? 0 : 1;
        p.side[x] = s;
        p.side[y] = 1 - s;
      }
    }
    auto r1 = check_r1(g, parts, cfg.slack);
    auto r2 = check_r2(g, parts, cfg.slack);
    if (r1.ok && r2.ok) return parts;
    last_violation = !r1.ok ? r1.what : r2.what;
  }
  throw std::runtime_error("sparse bipartition retries exhausted: " +
                           last_violation);
}

PartitionPlan assign_edges(const Graph& g,
                           const std::vector<Bipartition>& bipartitions,
                           std::uint64_t seed) {
  PartitionPlan plan;
  plan.t = int(bipartitions.size());
  plan.bipartitions = bipartitions;
  plan.piece_of_edge.assign(g.edge_count(), -1);
  Rng rng(seed);
  std::vector<int> candidates;
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [u, v] = g.edge(id);
    candidates.clear();
    for (int i = 0; i < plan.t; ++i)
      if (bipartitions[i].side[u] != bipartitions[i].side[v])
        candidates.push_back(i);
    if (candidates.empty())
      throw std::runtime_error("edge " + std::to_string(id) +
                               " crosses no bipartition; resample upstream");
    plan.piece_of_edge[id] = candidates[rng.index(candidates.size())];
  }
  return plan;
}

namespace {

struct PieceAdj {
  std::vector<int> a, b;                 // vertices per side
  std::vector<int> a_index, b_index;     // vertex -> local index
  std::vector<std::vector<int>> adj_ab;  // a-local -> b-locals
};

PieceAdj build_piece(const Graph& g, const PartitionPlan& plan, int i) {
  PieceAdj p;
  p.a_index.assign(g.vertex_count(), -1);
  p.b_index.assign(g.vertex_count(), -1);
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (plan.bipartitions[i].side[u] == 0) {
      p.a_index[u] = int(p.a.size());
      p.a.push_back(u);
    } else {
      p.b_index[u] = int(p.b.size());
      p.b.push_back(u);
    }
  }
  p.adj_ab.resize(p.a.size());
  for (int id = 0; id < g.edge_count(); ++id) {
    if (plan.piece_of_edge[id] != i) continue;
    auto [u, v] = g.edge(id);
    if (plan.bipartitions[i].side[u] == 1) std::swap(u, v);
    p.adj_ab[p.a_index[u]].push_back(p.b_index[v]);
  }
  return p;
}

long subset_edges(const PieceAdj& p, const std::vector<char>& in_x,
                  const std::vector<char>& in_y) {
  long e = 0;
  for (std::size_t i = 0; i < in_x.size(); ++i) {
    if (!in_x[i]) continue;
    for (int j : p.adj_ab[i]) e += in_y[j];
  }
  return e;
}

// Runs predicate over subset pairs (exhaustive for n <= 16, sampled
// otherwise); predicate(sx, sy, e) returns true when the property holds.
template <class Filter, class Pred>
void subset_audit(const Graph& g, const PartitionPlan& plan,
                  const PartitionConfig& cfg, std::uint64_t seed,
                  Filter filter, Pred pred, SubsetAudit& out) {
  const int n = g.vertex_count();
  out.exhaustive = n <= 16;
  for (int i = 0; i < plan.t && out.holds; ++i) {
    PieceAdj p = build_piece(g, plan, i);
    const int na = int(p.a.size()), nb = int(p.b.size());
    std::vector<char> in_x(na), in_y(nb);
    auto consider = [&](int sx, int sy) {
      long e = subset_edges(p, in_x, in_y);
      if (!pred(sx, sy, e)) {
        out.holds = false;
        out.piece = i;
        for (int ii = 0; ii < na; ++ii)
          if (in_x[ii]) out.witness_x.push_back(p.a[ii]);
        for (int jj = 0; jj < nb; ++jj)
          if (in_y[jj]) out.witness_y.push_back(p.b[jj]);
      }
    };
    if (out.exhaustive) {
      for (unsigned xm = 1; xm < (1u << na) && out.holds; ++xm) {
        int sx = 0;
        for (int ii = 0; ii < na; ++ii) {
          in_x[ii] = (xm >> ii) & 1u;
          sx += in_x[ii];
        }
        for (unsigned ym = 1; ym < (1u << nb) && out.holds; ++ym) {
          int sy = 0;
          for (int jj = 0; jj < nb; ++jj) {
            in_y[jj] = (ym >> jj) & 1u;
            sy += in_y[jj];
          }
          if (filter(sx, sy)) consider(sx, sy);
        }
      }
    } else {
      Rng rng(derive_seed(seed, 1000 + i));
      for (int trial = 0; trial < cfg.sample_count && out.holds; ++trial) {
        int sx = 1 + rng.index(na);
        int sy = 1 + rng.index(nb);
        if (!filter(sx, sy)) continue;
        std::fill(in_x.begin(), in_x.end(), 0);
        std::fill(in_y.begin(), in_y.end(), 0);
        for (int idx : rng.sample(na, sx)) in_x[idx] = 1;
        for (int idx : rng.sample(nb, sy)) in_y[idx] = 1;
        consider(sx, sy);
      }
    }
  }
}

}  // namespace

PartitionDiagnostics partition_diagnostics(const Graph& g,
                                           const PartitionPlan& plan,
                                           const PartitionConfig& cfg,
                                           std::uint64_t seed) {
  PartitionDiagnostics diag;
  const int n = g.vertex_count();
  const int d = g.regular_degree().value_or(-1);
  const int t = plan.t;
  if (d < 0) {
    diag.s1_ok = false;
    diag.violation = "host graph not regular";
    return diag;
  }

  for (const auto& p : plan.bipartitions) {
    long a = std::count(p.side.begin(), p.side.end(), 0);
    if (2 * a != n) {
      diag.balanced_ok = false;
      diag.violation = "bipartition not balanced";
      return diag;
    }
  }

  // (S1): every edge assigned to a piece it actually crosses.
  if (int(plan.piece_of_edge.size()) != g.edge_count()) {
    diag.s1_ok = false;
    diag.violation = "(S1) assignment size mismatch";
    return diag;
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    int i = plan.piece_of_edge[id];
    auto [u, v] = g.edge(id);
    if (i < 0 || i >= t ||
        plan.bipartitions[i].side[u] == plan.bipartitions[i].side[v]) {
      diag.s1_ok = false;
      diag.violation = "(S1) edge " + std::to_string(id) +
                       " not crossing its assigned piece";
      return diag;
    }
  }

  auto r1 = check_r1(g, plan.bipartitions, cfg.slack);
  diag.r1_ok = r1.ok;
  diag.r1_slack = r1.worst;
  auto r2 = check_r2(g, plan.bipartitions, cfg.slack);
  diag.r2_ok = r2.ok;
  diag.r2_slack = r2.worst;
  if (!r1.ok) diag.violation = r1.what;
  else if (!r2.ok) diag.violation = r2.what;

  // (S4): piece degrees within d/t +- slack*8d/t^(4/3).
  {
    const double center = double(d) / t;
    const double window = cfg.slack * 8.0 * d / std::pow(double(t), 4.0 / 3.0);
    std::vector<int> deg(n, 0);
    for (int i = 0; i < t; ++i) {
      std::fill(deg.begin(), deg.end(), 0);
      for (int id = 0; id < g.edge_count(); ++id)
        if (plan.piece_of_edge[id] == i) {
          ++deg[g.edge(id).first];
          ++deg[g.edge(id).second];
        }
      for (int u = 0; u < n; ++u) {
        double dev = std::abs(deg[u] - center);
        diag.s4_slack = std::max(diag.s4_slack, dev);
        if (dev > window && diag.s4_ok) {
          diag.s4_ok = false;
          if (diag.violation.empty())
            diag.violation = "(S4) vertex " + std::to_string(u) + " piece " +
                             std::to_string(i);
        }
      }
    }
  }

  const double cap = double(n) / (2.0 * t * t);
  // (S2): e < d|X|/t^2 for |X|=|Y| <= n/2t^2.
  subset_audit(
      g, plan, cfg, seed,
      [&](int sx, int sy) { return sx == sy && sx <= cap; },
      [&](int sx, int, long e) { return double(e) < double(d) * sx / (t * t); },
      diag.s2);
  // (S3): e >= 2(d/t)(1 - 8/t^(1/3})|X||Y|/n for large overlapping pairs.
  subset_audit(
      g, plan, cfg, seed + 1,
      [&](int sx, int sy) {
        return sx + sy > n / 2 && std::min(sx, sy) > cap;
      },
      [&](int sx, int sy, long e) {
        double lo = 2.0 * d / t * (1.0 - 8.0 / std::cbrt(double(t))) *
                    double(sx) * sy / n;
        return double(e) >= lo - 1e-9;
      },
      diag.s3);
  // (S5): e <= (1-4a)(d/t)|X| for n/2t^2 <= |X|=|Y| <= n/4, a = 1/10.
  subset_audit(
      g, plan, cfg, seed + 2,
      [&](int sx, int sy) {
        return sx == sy && sx >= cap && sx <= n / 4.0;
      },
      [&](int sx, int, long e) {
        return double(e) <= (1.0 - 0.4) * double(d) / t * sx + 1e-9;
      },
      diag.s5);

  if (diag.violation.empty() && !diag.s2.holds) diag.violation = "(S2)";
  if (diag.violation.empty() && !diag.s3.holds) diag.violation = "(S3)";
  if (diag.violation.empty() && !diag.s5.holds) diag.violation = "(S5)";
  return diag;
}

void write_partition_plan(const PartitionPlan& plan, std::ostream& out) {
  for (int i = 0; i < plan.t; ++i)
    for (std::size_t v = 0; v < plan.bipartitions[i].side.size(); ++v)
      out << i << " " << v << " "
          << (plan.bipartitions[i].side[v] == 0 ? "A" : "B") << "\n";
  for (std::size_t id = 0; id < plan.piece_of_edge.size(); ++id)
    out << id << " " << plan.piece_of_edge[id] << "\n";
}

}  // namespace onefact
