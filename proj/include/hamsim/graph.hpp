#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_set>
#include <vector>

namespace hamsim {

using Vertex = std::uint32_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

inline std::uint64_t edge_key(Edge e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

inline Vertex other_end(Edge e, Vertex x) { return e.u == x ? e.v : e.u; }

/// Simple undirected graph on {0..n-1}.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return edge_set_.size(); }

  bool has_edge(Vertex a, Vertex b) const {
    return a != b && edge_set_.contains(edge_key(make_edge(a, b)));
  }

  // Throws std::invalid_argument on loops or out-of-range endpoints.
  // Returns false if the edge is already present.
  bool add_edge(Vertex a, Vertex b);
  bool add_edge(Edge e) { return add_edge(e.u, e.v); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  /// Sorted edge list.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::unordered_set<std::uint64_t> edge_set_;
};

/// Subgraph induced by `vertices`; vertex vertices[i] becomes i.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// g plus the given extra edges (duplicates ignored).
Graph with_edges(const Graph& g, std::span<const Edge> extra);

Graph graph_from_edges(std::size_t n, std::span<const Edge> edges);

// Edge-list text format: optional "# n <count>" header, then one "u v" pair
// per line with u < v. Without a header n is max vertex + 1.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
void write_dot(std::ostream& os, const Graph& g);

}  // namespace hamsim
