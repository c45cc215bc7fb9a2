#include <algorithm>
#include <stdexcept>

#include "hamsim/cycle_engine.hpp"

namespace hamsim {

// Held-Karp over vertex subsets, anchored at vertex 0. The walk is oriented
// so that vertex 0 leaves through its forced pair (if any). A matched vertex
// whose mate is unvisited must step to the mate next; a matched vertex whose
// mate is already visited may only be entered from the mate.
std::optional<CycleCertificate> exact_hamilton(const Graph& g,
                                               const ForcedMatching& m) {
  const std::size_t n = g.num_vertices();
  if (n > 14) throw std::invalid_argument("exact_hamilton: n > 14");
  if (n < 3) return std::nullopt;

  std::vector<Vertex> mate(n, kNoVertex);
  for (Edge e : m.edges) {
    if (e.u >= n || e.v >= n || e.u == e.v || mate[e.u] != kNoVertex ||
        mate[e.v] != kNoVertex) {
      throw std::invalid_argument("exact_hamilton: invalid forced matching");
    }
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }

  const std::size_t full = (std::size_t{1} << n) - 1;
  constexpr int kUnreached = -1;
  std::vector<int> parent((full + 1) * n, kUnreached);
  auto at = [n](std::size_t mask, Vertex v) { return mask * n + v; };
  parent[at(1, 0)] = 0;

  for (std::size_t mask = 1; mask <= full; mask += 2) {
    for (Vertex v = 0; v < n; ++v) {
      if (parent[at(mask, v)] == kUnreached) continue;
      const bool must_follow_mate =
          mate[v] != kNoVertex && !(mask & (std::size_t{1} << mate[v]));
      for (Vertex u = 0; u < n; ++u) {
        const std::size_t bit = std::size_t{1} << u;
        if (mask & bit) continue;
        if (must_follow_mate) {
          if (u != mate[v]) continue;
        } else {
          if (!g.has_edge(v, u)) continue;
          if (mate[u] != kNoVertex && (mask & (std::size_t{1} << mate[u]))) continue;
        }
        int& slot = parent[at(mask | bit, u)];
        if (slot == kUnreached) slot = static_cast<int>(v);
      }
    }
  }

  for (Vertex v = 1; v < n; ++v) {
    if (parent[at(full, v)] == kUnreached || !g.has_edge(v, 0)) continue;
    CycleCertificate c;
    std::size_t mask = full;
    Vertex cur = v;
    while (cur != 0) {
      c.order.push_back(cur);
      const auto prev = static_cast<Vertex>(parent[at(mask, cur)]);
      mask &= ~(std::size_t{1} << cur);
      cur = prev;
    }
    c.order.push_back(0);
    std::reverse(c.order.begin(), c.order.end());
    return c;
  }
  return std::nullopt;
}

}  // namespace hamsim
