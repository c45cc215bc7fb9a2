#include "hamsim/strong_core.hpp"

#include <bit>
#include <deque>
#include <stdexcept>

namespace hamsim {

CorePartition strong_core(const Graph& g, std::size_t k) {
  if (k == 0) throw std::invalid_argument("strong_core: k must be positive");
  const std::size_t n = g.num_vertices();
  std::vector<char> in_core(n, 1);
  std::vector<std::size_t> core_deg(n);
  for (Vertex v = 0; v < n; ++v) core_deg[v] = g.degree(v);

  std::deque<Vertex> work;
  std::vector<char> queued(n, 1);
  for (Vertex v = 0; v < n; ++v) work.push_back(v);

  auto enqueue = [&](Vertex v) {
    if (!queued[v]) {
      queued[v] = 1;
      work.push_back(v);
    }
  };
  auto remove = [&](Vertex v) {
    in_core[v] = 0;
    enqueue(v);
    for (Vertex w : g.neighbors(v)) {
      --core_deg[w];
      enqueue(w);
    }
  };

  while (!work.empty()) {
    const Vertex u = work.front();
    work.pop_front();
    queued[u] = 0;
    if (core_deg[u] >= k) continue;
    if (in_core[u]) {
      remove(u);
    } else if (core_deg[u] > 0) {
      for (Vertex w : g.neighbors(u)) {
        if (in_core[w]) remove(w);
      }
    }
  }

  CorePartition p;
  p.k = k;
  p.color.assign(n, CoreColor::Red);
  for (Vertex v = 0; v < n; ++v) {
    if (in_core[v]) {
      p.color[v] = CoreColor::Black;
      p.black.push_back(v);
    } else if (core_deg[v] > 0) {
      p.color[v] = CoreColor::Blue;
      p.blue.push_back(v);
    } else {
      p.red.push_back(v);
    }
  }
  return p;
}

namespace {

bool property_holds(const std::vector<std::uint32_t>& adj, std::uint32_t s,
                    std::size_t k) {
  std::uint32_t closed = s;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (s & (1u << v)) closed |= adj[v];
  }
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if ((closed & (1u << v)) &&
        static_cast<std::size_t>(std::popcount(adj[v] & s)) < k) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Vertex> strong_core_bruteforce(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (n > 20) throw std::invalid_argument("strong_core_bruteforce: n > 20");
  std::vector<std::uint32_t> adj(n, 0);
  for (Edge e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  std::uint32_t all = 0;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t s = 1; s < limit && s != 0; ++s) {
    if (property_holds(adj, s, k)) all |= s;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (all & (1u << v)) out.push_back(v);
  }
  return out;
}

bool has_strong_core_property(const Graph& g, const std::vector<Vertex>& s,
                              std::size_t k) {
  std::vector<char> in_s(g.num_vertices(), 0);
  for (Vertex v : s) in_s[v] = 1;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::size_t inside = 0;
    for (Vertex w : g.neighbors(v)) inside += in_s[w];
    const bool relevant = in_s[v] || inside > 0;
    if (relevant && inside < k) return false;
  }
  return true;
}

}  // namespace hamsim
