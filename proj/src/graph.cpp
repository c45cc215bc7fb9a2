#include "hamsim/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hamsim {

bool Graph::add_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("self-loop");
  if (a >= adj_.size() || b >= adj_.size()) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  if (!edge_set_.insert(edge_key(make_edge(a, b))).second) return false;
  adj_[a].push_back(b);
  adj_[b].push_back(a);
  return true;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(g.num_vertices(), kNoVertex);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<Vertex>(i);
  }
  Graph out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : g.neighbors(vertices[i])) {
      if (local[w] != kNoVertex && local[w] > i) {
        out.add_edge(static_cast<Vertex>(i), local[w]);
      }
    }
  }
  return out;
}

Graph with_edges(const Graph& g, std::span<const Edge> extra) {
  Graph out = graph_from_edges(g.num_vertices(), g.edges());
  for (Edge e : extra) out.add_edge(e);
  return out;
}

Graph graph_from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (Edge e : edges) g.add_edge(e);
  return g;
}

void write_edge_list(std::ostream& os, const Graph& g) {
  os << "# n " << g.num_vertices() << '\n';
  for (Edge e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  bool have_n = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      std::size_t value = 0;
      if (ls >> hash >> key >> value && key == "n") {
        n = value;
        have_n = true;
      }
      continue;
    }
    long long a = 0, b = 0;
    if (!(ls >> a >> b) || a < 0 || b < 0) {
      throw std::runtime_error("malformed edge-list line: " + line);
    }
    edges.push_back(make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)));
  }
  if (!have_n) {
    for (Edge e : edges) n = std::max<std::size_t>(n, e.v + 1);
  }
  return graph_from_edges(n, edges);
}

void write_dot(std::ostream& os, const Graph& g) {
  os << "graph G {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) os << "  " << v << ";\n";
  for (Edge e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
}

}  // namespace hamsim
