#include "onefact/coloring.hpp"

#include <algorithm>
#include <stdexcept>

namespace onefact {

bool EdgeColoring::proper_in(const Graph& g) const {
  if (static_cast<int>(colors.size()) != g.edge_count()) return false;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<char> seen(k, 0);
    for (const auto& h : g.neighbors(v)) {
      int c = colors[h.edge_id];
      if (c < 0 || c >= k || seen[c]) return false;
      seen[c] = 1;
    }
  }
  return true;
}

std::vector<Matching> EdgeColoring::classes(const Graph& g) const {
  std::vector<Matching> out(k);
  for (int id = 0; id < g.edge_count(); ++id)
    out[colors[id]].edge_ids.push_back(id);
  return out;
}

namespace {

class MisraGries {
 public:
  explicit MisraGries(const Graph& g)
      : g_(g),
        delta_(g.max_degree()),
        col_(g.edge_count(), -1),
        at_(static_cast<std::size_t>(g.vertex_count()) * (delta_ + 1), -1) {}

  EdgeColoring run() {
    for (int id = 0; id < g_.edge_count(); ++id) color_edge(id);
    EdgeColoring ec;
    ec.colors = col_;
    ec.k = 0;
    for (int c : col_) ec.k = std::max(ec.k, c + 1);
    return ec;
  }

 private:
  int& at(int v, int c) { return at_[std::size_t(v) * (delta_ + 1) + c]; }

  int other(int eid, int v) const {
    auto [x, y] = g_.edge(eid);
    return x == v ? y : x;
  }

  int free_color(int v) {
    for (int c = 0; c <= delta_; ++c)
      if (at(v, c) < 0) return c;
    throw std::logic_error("no free color");  // impossible: deg <= delta
  }

  void set_color(int eid, int c) {
    auto [x, y] = g_.edge(eid);
    col_[eid] = c;
    at(x, c) = eid;
    at(y, c) = eid;
  }

  void unset_color(int eid) {
    int c = col_[eid];
    if (c < 0) return;
    auto [x, y] = g_.edge(eid);
    at(x, c) = -1;
    at(y, c) = -1;
    col_[eid] = -1;
  }

  // Flip the maximal path from u alternating colors d and c.
  // Returns the far endpoint.
  int invert_path(int u, int d, int c) {
    std::vector<int> path;
    int cur = u, want = d;
    for (;;) {
      int e = at(cur, want);
      if (e < 0) break;
      path.push_back(e);
      cur = other(e, cur);
      want = (want == d) ? c : d;
    }
    for (int e : path) unset_color(e);
    want = d;
    cur = u;
    for (int e : path) {
      int nxt = other(e, cur);
      set_color(e, want == d ? c : d);
      cur = nxt;
      want = (want == d) ? c : d;
    }
    return cur;
  }

  // Shift colors down the fan prefix [0..i] and give (u, fan[i]) color d.
  void rotate(int u, const std::vector<int>& fan_edge, int i, int d) {
    (void)u;
    std::vector<int> new_col(i + 1);
    for (int t = 0; t < i; ++t) new_col[t] = col_[fan_edge[t + 1]];
    new_col[i] = d;
    for (int t = 0; t <= i; ++t) unset_color(fan_edge[t]);
    for (int t = 0; t <= i; ++t) set_color(fan_edge[t], new_col[t]);
  }

  void color_edge(int eid0) {
    auto [u, v0] = g_.edge(eid0);
    std::vector<int> fan = {v0};
    std::vector<int> fan_edge = {eid0};
    std::vector<char> in_fan(g_.vertex_count(), 0);
    in_fan[v0] = 1;

    for (;;) {
      int tail = fan.back();
      int d = free_color(tail);
      int e = at(u, d);
      if (e < 0) {
        // d free at both u and the fan tail: rotate the whole fan.
        rotate(u, fan_edge, int(fan.size()) - 1, d);
        return;
      }
      int x = other(e, u);
      if (!in_fan[x]) {
        fan.push_back(x);
        fan_edge.push_back(e);
        in_fan[x] = 1;
        continue;
      }
      // d is used at u toward fan[j]; invert the cd path from u.
      int j = int(std::find(fan.begin(), fan.end(), x) - fan.begin());
      int c = free_color(u);
      invert_path(u, d, c);
      if (at(fan[j - 1], d) < 0) {
        rotate(u, fan_edge, j - 1, d);
      } else {
        rotate(u, fan_edge, int(fan.size()) - 1, d);
      }
      return;
    }
  }

  const Graph& g_;
  int delta_;
  std::vector<int> col_;
  std::vector<int> at_;
};

}  // namespace

EdgeColoring vizing_edge_coloring(const Graph& g) {
  if (g.edge_count() == 0) return EdgeColoring{{}, 0};
  return MisraGries(g).run();
}

namespace {

// Euler circuit of one connected component (all degrees even), iterative
// Hierholzer. Returns the vertex sequence; consecutive pairs are the
// traversed edges.
std::vector<std::pair<int, int>> euler_orientation(
    const Graph& g, const std::vector<int>& component,
    std::vector<char>& edge_used) {
  std::vector<int> next_arc(g.vertex_count(), 0);
  std::vector<std::pair<int, int>> arcs;  // oriented (from, to) with edge id
  std::vector<int> arc_eid;
  std::vector<std::pair<int, int>> stack;  // (vertex, incoming eid)
  int start = component.front();
  stack.push_back({start, -1});
  std::vector<std::pair<int, int>> circuit;  // (vertex, eid used to arrive)
  while (!stack.empty()) {
    auto [v, in_eid] = stack.back();
    bool advanced = false;
    for (int& i = next_arc[v]; i < g.degree(v); ++i) {
      const auto& h = g.neighbors(v)[i];
      if (edge_used[h.edge_id]) continue;
      edge_used[h.edge_id] = 1;
      ++i;
      stack.push_back({h.to, h.edge_id});
      advanced = true;
      break;
    }
    if (!advanced) {
      circuit.push_back({v, in_eid});
      stack.pop_back();
    }
  }
  // circuit is reversed; orientation: consecutive vertices.
  std::vector<std::pair<int, int>> oriented;  // (eid, from-vertex)
  for (std::size_t i = circuit.size(); i-- > 1;) {
    int from = circuit[i].first;
    int eid = circuit[i - 1].second;
    oriented.push_back({eid, from});
  }
  return oriented;
}

}  // namespace

TwoFactorization two_factorization(const Graph& g) {
  auto dopt = g.regular_degree();
  int deg = dopt ? *dopt : -1;
  if (!dopt || deg % 2 != 0 || deg == 0)
    throw std::invalid_argument("two_factorization needs 2k-regular, k >= 1");
  const int k = deg / 2;
  const int n = g.vertex_count();

  TwoFactorization tf;
  tf.factors.assign(k, {});

  std::vector<char> visited(n, 0), edge_used(g.edge_count(), 0);
  for (int s = 0; s < n; ++s) {
    if (visited[s]) continue;
    // collect component
    std::vector<int> comp;
    std::vector<int> stack = {s};
    visited[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& h : g.neighbors(v))
        if (!visited[h.to]) {
          visited[h.to] = 1;
          stack.push_back(h.to);
        }
    }
    auto oriented = euler_orientation(g, comp, edge_used);

    // Out/in double cover: a k-regular bipartite graph on comp's vertices.
    std::vector<int> local(n, -1);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = int(i);
    const int cn = int(comp.size());
    std::vector<std::pair<int, int>> cover_edges;  // (out-local, in-local)
    std::vector<int> cover_host_eid;
    for (auto [eid, from] : oriented) {
      int to = from == g.edge(eid).first ? g.edge(eid).second
                                         : g.edge(eid).first;
      cover_edges.push_back({local[from], cn + local[to]});
      cover_host_eid.push_back(eid);
    }
    Graph cover = Graph::build(2 * cn, cover_edges);
    std::vector<int> side(2 * cn, 0);
    for (int i = cn; i < 2 * cn; ++i) side[i] = 1;
    auto cover_view = BipartiteView::from_sides(cover, side);
    OneFactorization cover_fact = bipartite_one_factorization(cover_view);
    if (int(cover_fact.classes.size()) != k)
      throw std::logic_error("double cover factorization size mismatch");
    for (int f = 0; f < k; ++f)
      for (int ce : cover_fact.classes[f].edge_ids)
        tf.factors[f].push_back(cover_host_eid[ce]);
  }
  for (auto& f : tf.factors) std::sort(f.begin(), f.end());
  return tf;
}

std::vector<std::pair<Matching, Matching>> equalize_matching_pairs(
    std::vector<Matching> a_side, std::vector<Matching> b_side) {
  long ta = 0, tb = 0;
  for (auto& m : a_side) {
    m.normalize();
    ta += m.size();
  }
  for (auto& m : b_side) {
    m.normalize();
    tb += m.size();
  }
  if (ta != tb) throw std::invalid_argument("unequal total matching sizes");

  auto pop_largest = [](std::vector<Matching>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i].size() > v[best].size()) best = i;
    Matching m = std::move(v[best]);
    v.erase(v.begin() + best);
    return m;
  };
  auto drop_empty = [](std::vector<Matching>& v) {
    v.erase(std::remove_if(v.begin(), v.end(),
                           [](const Matching& m) { return m.size() == 0; }),
            v.end());
  };

  std::vector<std::pair<Matching, Matching>> out;
  for (;;) {
    drop_empty(a_side);
    drop_empty(b_side);
    if (a_side.empty() && b_side.empty()) break;
    Matching ma = pop_largest(a_side);
    Matching mb = pop_largest(b_side);
    int s = std::min(ma.size(), mb.size());
    auto carve = [&](Matching& m, std::vector<Matching>& rest) {
      if (m.size() == s) return m;
      Matching piece, leftover;
      piece.edge_ids.assign(m.edge_ids.begin(), m.edge_ids.begin() + s);
      leftover.edge_ids.assign(m.edge_ids.begin() + s, m.edge_ids.end());
      rest.push_back(std::move(leftover));
      return piece;
    };
    Matching pa = carve(ma, a_side);
    Matching pb = carve(mb, b_side);
    out.emplace_back(std::move(pa), std::move(pb));
  }
  return out;
}

OneFactorization bipartite_one_factorization(const BipartiteView& v) {
  auto r = v.regular_degree();
  if (!r || !v.balanced())
    throw std::invalid_argument("view is not regular balanced");
  const Graph& g = *v.host;
  std::vector<char> alive(g.edge_count(), 0);
  for (int id : v.crossing) alive[id] = 1;
  std::vector<char> active(g.vertex_count(), 1);

  OneFactorization fact;
  for (int round = 0; round < *r; ++round) {
    Matching m = max_matching_restricted(g, v.side, alive, active);
    if (m.size() != int(v.a.size()))
      throw std::logic_error(
          "regular bipartite layer unexpectedly lost its perfect matching");
    for (int id : m.edge_ids) alive[id] = 0;
    fact.classes.push_back(std::move(m));
  }
  return fact;
}

}  // namespace onefact
