#include "onefact/matching_flow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "onefact/flow.hpp"
#include "onefact/rng.hpp"

namespace onefact {

BipartiteView BipartiteView::from_sides(const Graph& g, std::vector<int> side) {
  if (static_cast<int>(side.size()) != g.vertex_count())
    throw std::invalid_argument("side vector size mismatch");
  BipartiteView v;
  v.host = &g;
  v.side = std::move(side);
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (v.side[u] != 0 && v.side[u] != 1)
      throw std::invalid_argument("side values must be 0 or 1");
    (v.side[u] == 0 ? v.a : v.b).push_back(u);
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [x, y] = g.edge(id);
    if (v.side[x] != v.side[y]) v.crossing.push_back(id);
  }
  return v;
}

std::vector<int> BipartiteView::view_degrees() const {
  std::vector<int> deg(host->vertex_count(), 0);
  for (int id : crossing) {
    auto [x, y] = host->edge(id);
    ++deg[x];
    ++deg[y];
  }
  return deg;
}

int BipartiteView::min_view_degree() const {
  auto deg = view_degrees();
  return deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
}

std::optional<int> BipartiteView::regular_degree() const {
  auto deg = view_degrees();
  if (deg.empty()) return 0;
  int r = deg[0];
  for (int d : deg)
    if (d != r) return std::nullopt;
  return r;
}

bool Factor::valid_in(const BipartiteView& v) const {
  std::vector<int> deg(v.host->vertex_count(), 0);
  std::vector<char> in_view(v.host->edge_count(), 0);
  for (int id : v.crossing) in_view[id] = 1;
  for (int id : edge_ids) {
    if (id < 0 || id >= v.host->edge_count() || !in_view[id]) return false;
    auto [x, y] = v.host->edge(id);
    ++deg[x];
    ++deg[y];
  }
  for (int d : deg)
    if (d != r) return false;
  return true;
}

namespace {

// Hopcroft-Karp on a-indexed adjacency carrying host edge ids.
struct Hk {
  int na, nb;
  std::vector<std::vector<std::pair<int, int>>> adj;  // a -> (b, eid)
  std::vector<int> match_a, match_b;                  // partner index or -1
  std::vector<int> eid_a;                             // matched edge id per a
  std::vector<int> dist;

  Hk(int na_, int nb_) : na(na_), nb(nb_), adj(na_) {}

  bool bfs() {
    std::queue<int> q;
    dist.assign(na, -1);
    for (int i = 0; i < na; ++i)
      if (match_a[i] < 0) {
        dist[i] = 0;
        q.push(i);
      }
    bool found = false;
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (auto [j, eid] : adj[i]) {
        (void)eid;
        int k = match_b[j];
        if (k < 0) {
          found = true;
        } else if (dist[k] < 0) {
          dist[k] = dist[i] + 1;
          q.push(k);
        }
      }
    }
    return found;
  }

  bool dfs(int i) {
    for (auto [j, eid] : adj[i]) {
      int k = match_b[j];
      if (k < 0 || (dist[k] == dist[i] + 1 && dfs(k))) {
        match_a[i] = j;
        match_b[j] = i;
        eid_a[i] = eid;
        return true;
      }
    }
    dist[i] = -1;
    return false;
  }

  int solve() {
    match_a.assign(na, -1);
    match_b.assign(nb, -1);
    eid_a.assign(na, -1);
    int size = 0;
    while (bfs())
      for (int i = 0; i < na; ++i)
        if (match_a[i] < 0 && dfs(i)) ++size;
    return size;
  }
};

Hk build_hk(const BipartiteView& v) {
  const Graph& g = *v.host;
  std::vector<int> a_index(g.vertex_count(), -1), b_index(g.vertex_count(), -1);
  for (std::size_t i = 0; i < v.a.size(); ++i) a_index[v.a[i]] = int(i);
  for (std::size_t j = 0; j < v.b.size(); ++j) b_index[v.b[j]] = int(j);
  Hk hk(int(v.a.size()), int(v.b.size()));
  for (int id : v.crossing) {
    auto [x, y] = g.edge(id);
    if (v.side[x] == 1) std::swap(x, y);
    hk.adj[a_index[x]].push_back({b_index[y], id});
  }
  return hk;
}

Matching matching_from_hk(const Hk& hk) {
  Matching m;
  for (int i = 0; i < hk.na; ++i)
    if (hk.match_a[i] >= 0) m.edge_ids.push_back(hk.eid_a[i]);
  m.normalize();
  return m;
}

int find_edge_id(const Graph& g, int u, int v) {
  for (const auto& h : g.neighbors(u))
    if (h.to == v) return h.edge_id;
  return -1;
}

}  // namespace

Matching max_bipartite_matching(const BipartiteView& v) {
  Hk hk = build_hk(v);
  hk.solve();
  return matching_from_hk(hk);
}

PerfectMatchingResult perfect_matching_or_witness(const BipartiteView& v) {
  if (!v.balanced()) throw std::invalid_argument("view is not balanced");
  Hk hk = build_hk(v);
  int size = hk.solve();
  PerfectMatchingResult res;
  if (size == hk.na) {
    res.matching = matching_from_hk(hk);
    return res;
  }
  // Alternating reachability from unmatched A vertices: the reachable A set
  // X has |N(X)| = |X| - (#unmatched in X) < |X|.
  std::vector<char> ra(hk.na, 0), rb(hk.nb, 0);
  std::queue<int> q;
  for (int i = 0; i < hk.na; ++i)
    if (hk.match_a[i] < 0) {
      ra[i] = 1;
      q.push(i);
    }
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (auto [j, eid] : hk.adj[i]) {
      (void)eid;
      if (rb[j]) continue;
      rb[j] = 1;
      int k = hk.match_b[j];
      if (k >= 0 && !ra[k]) {
        ra[k] = 1;
        q.push(k);
      }
    }
  }
  HallWitness w;
  w.from_side = 0;
  for (int i = 0; i < hk.na; ++i)
    if (ra[i]) w.x.push_back(v.a[i]);
  for (int j = 0; j < hk.nb; ++j)
    if (rb[j]) w.neighbors.push_back(v.b[j]);
  res.witness = std::move(w);
  return res;
}

RFactorResult r_factor(const BipartiteView& v, int r) {
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  if (!v.balanced()) throw std::invalid_argument("view is not balanced");
  const int m = int(v.a.size());
  RFactorResult res;
  if (r == 0) {
    res.factor = Factor{{}, 0};
    return res;
  }
  const Graph& g = *v.host;
  std::vector<int> a_index(g.vertex_count(), -1), b_index(g.vertex_count(), -1);
  for (int i = 0; i < m; ++i) a_index[v.a[i]] = i;
  for (int j = 0; j < m; ++j) b_index[v.b[j]] = j;
  const int source = 0, sink = 2 * m + 1;
  MaxFlow flow(2 * m + 2);
  for (int i = 0; i < m; ++i) flow.add_edge(source, 1 + i, r);
  for (int j = 0; j < m; ++j) flow.add_edge(1 + m + j, sink, r);
  std::vector<std::pair<int, int>> cross_arcs;  // (arc, eid)
  for (int id : v.crossing) {
    auto [x, y] = g.edge(id);
    if (v.side[x] == 1) std::swap(x, y);
    cross_arcs.emplace_back(
        flow.add_edge(1 + a_index[x], 1 + m + b_index[y], 1), id);
  }
  long long got = flow.run(source, sink);
  if (got == static_cast<long long>(r) * m) {
    Factor f;
    f.r = r;
    for (auto [arc, eid] : cross_arcs)
      if (flow.flow_on(arc) > 0) f.edge_ids.push_back(eid);
    std::sort(f.edge_ids.begin(), f.edge_ids.end());
    res.factor = std::move(f);
    return res;
  }
  // Min cut -> violating Gale-Ryser pair: X = reachable A side, Y =
  // unreachable B side, e(X,Y) < r(|X|+|Y|-m).
  auto reach = flow.residual_reachable(source);
  for (int i = 0; i < m; ++i)
    if (reach[1 + i]) res.x.push_back(v.a[i]);
  for (int j = 0; j < m; ++j)
    if (!reach[1 + m + j]) res.y.push_back(v.b[j]);
  return res;
}

std::pair<int, Factor> max_feasible_factor(const BipartiteView& v) {
  int lo = 0, hi = v.min_view_degree();
  Factor best{{}, 0};
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    auto res = r_factor(v, mid);
    if (res.factor) {
      lo = mid;
      best = std::move(*res.factor);
    } else {
      hi = mid - 1;
    }
  }
  return {lo, best};
}

namespace {

// Crossing-edge count between X (a-indices) and Y (b-indices).
long cross_count(const std::vector<std::vector<std::pair<int, int>>>& adj,
                 const std::vector<char>& in_x, const std::vector<char>& in_y) {
  long e = 0;
  for (std::size_t i = 0; i < in_x.size(); ++i) {
    if (!in_x[i]) continue;
    for (auto [j, eid] : adj[i]) {
      (void)eid;
      e += in_y[j];
    }
  }
  return e;
}

std::vector<int> pick_vertices(const std::vector<int>& verts,
                               const std::vector<char>& mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(verts[i]);
  return out;
}

}  // namespace

FactorConditionDiagnostic check_factor_conditions(
    const BipartiteView& v, const FactorConditionParams& p) {
  FactorConditionDiagnostic diag;
  const int n = v.host->vertex_count();
  const int na = int(v.a.size()), nb = int(v.b.size());

  diag.p4.holds = p.gamma >= std::max(p.beta3, p.beta1 + p.beta2);
  diag.p4.exhaustive = true;

  auto deg = v.view_degrees();
  diag.p1.exhaustive = true;
  for (int u = 0; u < n; ++u) {
    if (deg[u] < p.r * (1.0 - p.beta1) - 1e-12) {
      diag.p1.holds = false;
      diag.p1.witness_vertex = u;
      break;
    }
  }

  Hk hk = build_hk(v);  // borrowed for its adjacency only
  const double size_cap = p.phi > 0 ? p.r / p.phi : double(na);

  auto check_pair = [&](const std::vector<char>& in_x,
                        const std::vector<char>& in_y, int sx, int sy,
                        ConditionReport& rep, bool is_p2) {
    long e = cross_count(hk.adj, in_x, in_y);
    bool ok;
    if (is_p2) {
      ok = double(e) < p.r * p.beta2 * sx;
    } else {
      ok = double(e) >= 2.0 * p.r * (1.0 - p.beta3) * sx * sy / n - 1e-9;
    }
    if (!ok && rep.holds) {
      rep.holds = false;
      rep.witness_x = pick_vertices(v.a, in_x);
      rep.witness_y = pick_vertices(v.b, in_y);
    }
  };

  if (n <= 16) {
    diag.p2.exhaustive = diag.p3.exhaustive = true;
    std::vector<char> in_x(na), in_y(nb);
    for (unsigned xm = 1; xm < (1u << na); ++xm) {
      int sx = std::popcount(xm);
      for (int i = 0; i < na; ++i) in_x[i] = (xm >> i) & 1u;
      for (unsigned ym = 1; ym < (1u << nb); ++ym) {
        int sy = std::popcount(ym);
        for (int j = 0; j < nb; ++j) in_y[j] = (ym >> j) & 1u;
        if (sx == sy && sx <= size_cap)
          check_pair(in_x, in_y, sx, sy, diag.p2, true);
        if (sx + sy > n / 2 && std::min(sx, sy) > size_cap)
          check_pair(in_x, in_y, sx, sy, diag.p3, false);
      }
    }
  } else {
    Rng rng(p.seed);
    std::vector<char> in_x(na), in_y(nb);
    auto fill_mask = [&](std::vector<char>& mask, int count, int total) {
      std::fill(mask.begin(), mask.end(), 0);
      for (int idx : rng.sample(total, count)) mask[idx] = 1;
    };
    int cap2 = std::min(na, int(std::floor(size_cap)));
    for (int trial = 0; trial < p.sample_count && cap2 >= 1; ++trial) {
      int s = 1 + rng.index(cap2);
      fill_mask(in_x, s, na);
      fill_mask(in_y, s, nb);
      check_pair(in_x, in_y, s, s, diag.p2, true);
    }
    int lo3 = int(std::floor(size_cap)) + 1;
    for (int trial = 0; trial < p.sample_count && lo3 <= std::min(na, nb);
         ++trial) {
      int sx = lo3 + rng.index(na - lo3 + 1);
      int sy = lo3 + rng.index(nb - lo3 + 1);
      if (sx + sy <= n / 2) continue;
      fill_mask(in_x, sx, na);
      fill_mask(in_y, sy, nb);
      check_pair(in_x, in_y, sx, sy, diag.p3, false);
    }
  }
  return diag;
}

Matching min_degree_perfect_matching(const Graph& g) {
  const int n = g.vertex_count();
  if (n % 2 != 0)
    throw std::invalid_argument("perfect matching needs even n");
  if (g.min_degree() < n / 2)
    throw std::invalid_argument("min degree below n/2");

  std::vector<int> partner(n, -1), match_eid(n, -1);
  auto bind = [&](int u, int v, int eid) {
    partner[u] = v;
    partner[v] = u;
    match_eid[u] = match_eid[v] = eid;
  };
  for (int u = 0; u < n; ++u) {
    if (partner[u] >= 0) continue;
    for (const auto& h : g.neighbors(u)) {
      if (partner[h.to] < 0) {
        bind(u, h.to, h.edge_id);
        break;
      }
    }
  }
  std::vector<int> free;
  for (int u = 0; u < n; ++u)
    if (partner[u] < 0) free.push_back(u);
  // Pair up leftover vertices via swap augmentation: for unmatched x,y pick
  // a matched pair (u,v) with xu, yv in E; such a pair exists by pigeonhole
  // under the degree bound.
  while (free.size() >= 2) {
    int x = free.back();
    free.pop_back();
    int y = free.back();
    free.pop_back();
    int exy = find_edge_id(g, x, y);
    if (exy >= 0) {
      bind(x, y, exy);
      continue;
    }
    bool done = false;
    for (const auto& h : g.neighbors(x)) {
      int u = h.to;
      int vtx = partner[u];
      if (vtx < 0) continue;
      int eyv = find_edge_id(g, y, vtx);
      if (eyv >= 0) {
        bind(x, u, h.edge_id);
        bind(y, vtx, eyv);
        done = true;
        break;
      }
    }
    if (!done)
      throw std::runtime_error("swap augmentation failed unexpectedly");
  }
  Matching m;
  for (int u = 0; u < n; ++u)
    if (partner[u] > u) m.edge_ids.push_back(match_eid[u]);
  m.normalize();
  return m;
}

Matching max_matching_restricted(const Graph& g, const std::vector<int>& side,
                                 const std::vector<char>& edge_alive,
                                 const std::vector<char>& vertex_active) {
  std::vector<int> a_index(g.vertex_count(), -1), b_index(g.vertex_count(), -1);
  std::vector<int> a_verts, b_verts;
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (!vertex_active[u]) continue;
    if (side[u] == 0) {
      a_index[u] = int(a_verts.size());
      a_verts.push_back(u);
    } else {
      b_index[u] = int(b_verts.size());
      b_verts.push_back(u);
    }
  }
  Hk hk(int(a_verts.size()), int(b_verts.size()));
  for (int id = 0; id < g.edge_count(); ++id) {
    if (!edge_alive[id]) continue;
    auto [x, y] = g.edge(id);
    if (side[x] == side[y]) continue;
    if (side[x] == 1) std::swap(x, y);
    if (a_index[x] < 0 || b_index[y] < 0) continue;
    hk.adj[a_index[x]].push_back({b_index[y], id});
  }
  hk.solve();
  return matching_from_hk(hk);
}

}  // namespace onefact
