#pragma once

#include <vector>

namespace onefact {

// Dinic max flow: BFS level phases with DFS blocking flow. Unit-capacity
// bipartite layouts get Hopcroft-Karp behavior for free.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);

  // Returns the arc index (use it to query flow later).
  int add_edge(int from, int to, int capacity);

  long long run(int source, int sink);

  int flow_on(int arc) const;

  // Nodes reachable from `source` in the residual graph of the last run.
  std::vector<char> residual_reachable(int source) const;

 private:
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  bool bfs(int source, int sink);
  int dfs(int v, int sink, int pushed);

  int n_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<std::pair<int, int>> arc_index_;  // arc id -> (node, slot)
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace onefact
