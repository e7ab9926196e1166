#include "onefact/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace onefact {

Graph Graph::build(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  Graph g;
  g.n_ = n;
  g.adj_.resize(n);
  std::set<std::pair<int, int>> seen;
  g.edges_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(u) + "," + std::to_string(v) +
                                  ")");
    if (u == v)
      throw std::invalid_argument("loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    int id = static_cast<int>(g.edges_.size());
    g.edges_.emplace_back(u, v);
    g.adj_[u].push_back({v, id});
    g.adj_[v].push_back({u, id});
  }
  return g;
}

int Graph::min_degree() const {
  int d = n_ == 0 ? 0 : edge_count() * 2;
  for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

std::optional<int> Graph::regular_degree() const {
  if (n_ == 0) return 0;
  int d = degree(0);
  for (int v = 1; v < n_; ++v)
    if (degree(v) != d) return std::nullopt;
  return d;
}

bool Graph::has_edge(int u, int v) const {
  for (const auto& h : adj_[u])
    if (h.to == v) return true;
  return false;
}

std::pair<Graph, std::vector<int>> Graph::subtract(
    const std::vector<int>& remove) const {
  std::vector<char> gone(edges_.size(), 0);
  for (int id : remove) {
    if (id < 0 || id >= edge_count())
      throw std::invalid_argument("invalid edge id " + std::to_string(id));
    gone[id] = 1;
  }
  std::vector<int> remap(edges_.size(), -1);
  std::vector<std::pair<int, int>> kept;
  kept.reserve(edges_.size());
  for (int id = 0; id < edge_count(); ++id) {
    if (gone[id]) continue;
    remap[id] = static_cast<int>(kept.size());
    kept.push_back(edges_[id]);
  }
  return {Graph::build(n_, kept), std::move(remap)};
}

bool Matching::valid_in(const Graph& g) const {
  std::vector<char> seen(g.vertex_count(), 0);
  for (int id : edge_ids) {
    if (id < 0 || id >= g.edge_count()) return false;
    auto [u, v] = g.edge(id);
    if (seen[u] || seen[v]) return false;
    seen[u] = seen[v] = 1;
  }
  return true;
}

std::vector<char> Matching::covered(const Graph& g) const {
  std::vector<char> c(g.vertex_count(), 0);
  for (int id : edge_ids) {
    auto [u, v] = g.edge(id);
    c[u] = c[v] = 1;
  }
  return c;
}

void Matching::normalize() { std::sort(edge_ids.begin(), edge_ids.end()); }

Graph read_edge_list(std::istream& in) {
  std::string line;
  long n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m)) throw std::invalid_argument("bad header line");
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) throw std::invalid_argument("bad edge line: " + line);
    edges.emplace_back(u, v);
  }
  if (n < 0) throw std::invalid_argument("missing header line");
  if (static_cast<long>(edges.size()) != m)
    throw std::invalid_argument("edge count mismatch");
  return Graph::build(static_cast<int>(n), edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out,
                     const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  out << g.vertex_count() << " " << g.edge_count() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

}  // namespace onefact
