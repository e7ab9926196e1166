#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace onefact {

struct HalfEdge {
  int to;
  int edge_id;
};

// Immutable simple undirected graph. Vertices are 0..n-1; edge ids are
// assigned in construction order and are the currency all other modules
// trade in (matchings, factors and colorings are edge-id sets).
class Graph {
 public:
  Graph() = default;

  // Validates simplicity; throws std::invalid_argument on loops, duplicate
  // edges, or out-of-range endpoints.
  static Graph build(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::pair<int, int>& edge(int id) const { return edges_[id]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<HalfEdge>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int min_degree() const;
  int max_degree() const;

  // d if every degree equals d, absent otherwise.
  std::optional<int> regular_degree() const;

  bool has_edge(int u, int v) const;

  // New graph on the same vertex set without the listed edges. The second
  // component maps old edge id -> new edge id, -1 for removed edges.
  std::pair<Graph, std::vector<int>> subtract(
      const std::vector<int>& remove) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<HalfEdge>> adj_;
};

// Vertex-disjoint edge set, stored as sorted host edge ids.
struct Matching {
  std::vector<int> edge_ids;

  int size() const { return static_cast<int>(edge_ids.size()); }
  bool valid_in(const Graph& g) const;
  // covered[v] = 1 iff some matching edge touches v.
  std::vector<char> covered(const Graph& g) const;
  void normalize();
};

// Ordered list of d perfect matchings partitioning E(host).
struct OneFactorization {
  std::vector<Matching> classes;
};

// Edge-list text format: optional leading '#' comment lines, then "n m",
// then m lines "u v". Round-trips bit-exactly through write_edge_list.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out,
                     const std::vector<std::string>& comments = {});

}  // namespace onefact
