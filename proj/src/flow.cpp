#include "onefact/flow.hpp"

#include <algorithm>
#include <queue>

namespace onefact {

MaxFlow::MaxFlow(int node_count) : n_(node_count), arcs_(node_count) {}

int MaxFlow::add_edge(int from, int to, int capacity) {
  int id = static_cast<int>(arc_index_.size());
  arc_index_.emplace_back(from, static_cast<int>(arcs_[from].size()));
  arcs_[from].push_back({to, capacity, static_cast<int>(arcs_[to].size())});
  arcs_[to].push_back({from, 0, static_cast<int>(arcs_[from].size()) - 1});
  return id;
}

bool MaxFlow::bfs(int source, int sink) {
  level_.assign(n_, -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Arc& a : arcs_[v]) {
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

int MaxFlow::dfs(int v, int sink, int pushed) {
  if (v == sink) return pushed;
  for (int& i = iter_[v]; i < static_cast<int>(arcs_[v].size()); ++i) {
    Arc& a = arcs_[v][i];
    if (a.cap > 0 && level_[a.to] == level_[v] + 1) {
      int got = dfs(a.to, sink, std::min(pushed, a.cap));
      if (got > 0) {
        a.cap -= got;
        arcs_[a.to][a.rev].cap += got;
        return got;
      }
    }
  }
  return 0;
}

long long MaxFlow::run(int source, int sink) {
  long long total = 0;
  while (bfs(source, sink)) {
    iter_.assign(n_, 0);
    while (int got = dfs(source, sink, 1 << 30)) total += got;
  }
  return total;
}

int MaxFlow::flow_on(int arc) const {
  auto [node, slot] = arc_index_[arc];
  const Arc& a = arcs_[node][slot];
  return arcs_[a.to][a.rev].cap;  // reverse cap equals pushed flow
}

std::vector<char> MaxFlow::residual_reachable(int source) const {
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  seen[source] = 1;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Arc& a : arcs_[v]) {
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = 1;
        q.push(a.to);
      }
    }
  }
  return seen;
}

}  // namespace onefact
