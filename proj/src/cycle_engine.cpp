#include "hamsim/cycle_engine.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>

#include "hamsim/rng.hpp"

namespace hamsim {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Vertex> mates_of(std::size_t n, const ForcedMatching& m) {
  std::vector<Vertex> mate(n, kNoVertex);
  for (Edge e : m.edges) {
    if (e.u == e.v || e.u >= n || e.v >= n) {
      throw std::invalid_argument("forced pair outside the vertex set");
    }
    if (mate[e.u] != kNoVertex || mate[e.v] != kNoVertex) {
      throw std::invalid_argument("forced pairs are not disjoint");
    }
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  return mate;
}

// Each vertex needs two cycle neighbours; a forced pair supplies one.
bool degree_feasible(const Graph& g, const std::vector<Vertex>& mate) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::size_t free_nbrs = 0;
    for (Vertex w : g.neighbors(v)) free_nbrs += (w != mate[v]);
    const std::size_t need = mate[v] == kNoVertex ? 2 : 1;
    if (free_nbrs < need) return false;
  }
  return true;
}

struct Contraction {
  std::vector<std::array<Vertex, 2>> ports;  // equal ports for a lone vertex
  std::vector<std::uint32_t> node_of;
  std::vector<std::uint8_t> port_of;
};

Contraction contract(std::size_t n, const std::vector<Vertex>& mate) {
  Contraction c;
  c.node_of.assign(n, 0);
  c.port_of.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (mate[v] != kNoVertex && mate[v] < v) continue;
    const auto id = static_cast<std::uint32_t>(c.ports.size());
    const Vertex w = mate[v] == kNoVertex ? v : mate[v];
    c.ports.push_back({v, w});
    c.node_of[v] = id;
    c.node_of[w] = id;
    c.port_of[v] = 0;
    c.port_of[w] = (w == v) ? 0 : 1;
  }
  return c;
}

// Subset DP over contracted nodes. State (mask, node, entry port); the
// walk leaves a node through its other port.
std::optional<CycleCertificate> exact_contracted(const Graph& g,
                                                 const Contraction& c) {
  const std::size_t nodes = c.ports.size();
  constexpr std::uint8_t kUnreached = 0xFF;
  constexpr std::uint8_t kStart = 0xFE;
  const std::size_t states = (std::size_t{1} << nodes) * nodes * 2;
  std::vector<std::uint8_t> parent(states, kUnreached);
  auto idx = [nodes](std::size_t mask, std::size_t j, std::size_t p) {
    return (mask * nodes + j) * 2 + p;
  };
  auto exit_of = [&c](std::size_t j, std::size_t p) { return c.ports[j][1 - p]; };

  parent[idx(1, 0, 0)] = kStart;
  const std::size_t full = (std::size_t{1} << nodes) - 1;
  for (std::size_t mask = 1; mask <= full; mask += 2) {
    for (std::size_t j = 0; j < nodes; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      for (std::size_t p = 0; p < 2; ++p) {
        if (parent[idx(mask, j, p)] == kUnreached) continue;
        const Vertex x = exit_of(j, p);
        for (Vertex y : g.neighbors(x)) {
          const std::size_t jn = c.node_of[y];
          if (mask & (std::size_t{1} << jn)) continue;
          const std::size_t next = idx(mask | (std::size_t{1} << jn), jn, c.port_of[y]);
          if (parent[next] == kUnreached) {
            parent[next] = static_cast<std::uint8_t>(j * 2 + p);
          }
        }
      }
    }
  }

  const Vertex start = c.ports[0][0];
  for (std::size_t j = 1; j < nodes; ++j) {
    for (std::size_t p = 0; p < 2; ++p) {
      if (parent[idx(full, j, p)] == kUnreached) continue;
      if (!g.has_edge(exit_of(j, p), start)) continue;
      std::vector<std::pair<std::size_t, std::size_t>> walk;
      std::size_t mask = full, cj = j, cp = p;
      for (;;) {
        walk.emplace_back(cj, cp);
        const std::uint8_t code = parent[idx(mask, cj, cp)];
        if (code == kStart) break;
        mask &= ~(std::size_t{1} << cj);
        cj = code / 2;
        cp = code % 2;
      }
      std::reverse(walk.begin(), walk.end());
      CycleCertificate cert;
      for (auto [node, port] : walk) {
        const auto& pr = c.ports[node];
        cert.order.push_back(pr[port]);
        if (pr[0] != pr[1]) cert.order.push_back(pr[1 - port]);
      }
      return cert;
    }
  }
  return std::nullopt;
}

// Pósa rotation-extension on a path that keeps every forced pair adjacent.
class RotationSearch {
 public:
  RotationSearch(const Graph& g, const std::vector<Vertex>& mate, Rng& rng)
      : g_(g), mate_(mate), rng_(rng), pos_(g.num_vertices(), kUnplaced) {}

  bool attempt(std::size_t max_steps, Clock::time_point deadline) {
    const std::size_t n = g_.num_vertices();
    for (Vertex v : path_) pos_[v] = kUnplaced;
    path_.clear();
    const auto s = static_cast<Vertex>(rng_.below(n));
    place(s);
    if (mate_[s] != kNoVertex) place(mate_[s]);

    for (std::size_t step = 0; step < max_steps; ++step) {
      if ((step & 255) == 255 && Clock::now() > deadline) return false;
      const Vertex end = path_.back();
      if (path_.size() == n) {
        if (g_.has_edge(end, path_.front())) return true;
        rotate_or_flip([&](Vertex e) { return g_.has_edge(e, path_.front()); }, 0.05);
        continue;
      }
      if (extend(end)) continue;
      rotate_or_flip([&](Vertex e) { return unvisited_degree(e) > 0; }, 0.1);
    }
    return false;
  }

  const std::vector<Vertex>& path() const { return path_; }

 private:
  static constexpr std::size_t kUnplaced = static_cast<std::size_t>(-1);

  void place(Vertex v) {
    pos_[v] = path_.size();
    path_.push_back(v);
  }

  std::size_t unvisited_degree(Vertex v) const {
    std::size_t d = 0;
    for (Vertex w : g_.neighbors(v)) d += (pos_[w] == kUnplaced);
    return d;
  }

  // Warnsdorff-style: prefer the neighbour whose exit vertex has the fewest
  // unvisited neighbours.
  bool extend(Vertex end) {
    Vertex best = kNoVertex;
    std::size_t best_score = 0, ties = 0;
    for (Vertex y : g_.neighbors(end)) {
      if (pos_[y] != kUnplaced) continue;
      const Vertex exit = mate_[y] == kNoVertex ? y : mate_[y];
      std::size_t score = unvisited_degree(exit);
      if (exit != y && g_.has_edge(exit, y)) --score;
      if (best == kNoVertex || score < best_score) {
        best = y;
        best_score = score;
        ties = 1;
      } else if (score == best_score && rng_.below(++ties) == 0) {
        best = y;
      }
    }
    if (best == kNoVertex) return false;
    place(best);
    if (mate_[best] != kNoVertex) place(mate_[best]);
    return true;
  }

  // Rotation at the back end: for a neighbour path[i] of the end, reverse
  // path[i+1..]. The broken edge (path[i], path[i+1]) must not be forced.
  template <typename Good>
  void rotate_or_flip(Good&& good, double flip_prob) {
    const std::size_t size = path_.size();
    const Vertex end = path_.back();
    candidates_.clear();
    preferred_.clear();
    for (Vertex y : g_.neighbors(end)) {
      const std::size_t i = pos_[y];
      if (i == kUnplaced || i + 2 >= size) continue;
      if (mate_[path_[i]] == path_[i + 1]) continue;
      candidates_.push_back(i);
      if (good(path_[i + 1])) preferred_.push_back(i);
    }
    if (candidates_.empty() || rng_.uniform() < flip_prob) {
      reverse_from(0);
      return;
    }
    const auto& pool = preferred_.empty() ? candidates_ : preferred_;
    reverse_from(pool[rng_.below(pool.size())] + 1);
  }

  void reverse_from(std::size_t from) {
    std::reverse(path_.begin() + static_cast<std::ptrdiff_t>(from), path_.end());
    for (std::size_t i = from; i < path_.size(); ++i) pos_[path_[i]] = i;
  }

  const Graph& g_;
  const std::vector<Vertex>& mate_;
  Rng& rng_;
  std::vector<std::size_t> pos_;
  std::vector<Vertex> path_;
  std::vector<std::size_t> candidates_;
  std::vector<std::size_t> preferred_;
};

}  // namespace

std::optional<CycleCertificate> complete_cycle(const Graph& g,
                                               const ForcedMatching& m,
                                               const CycleSearchOptions& options) {
  const std::size_t n = g.num_vertices();
  const std::vector<Vertex> mate = mates_of(n, m);
  if (n < 3 || !degree_feasible(g, mate)) return std::nullopt;

  const Contraction c = contract(n, mate);
  if (c.ports.size() <= options.exact_node_limit && c.ports.size() <= 20) {
    return exact_contracted(g, c);
  }

  const auto deadline = Clock::now() + options.time_budget;
  Rng rng(options.seed);
  RotationSearch search(g, mate, rng);
  const std::size_t max_steps = 40 * n + 1000;
  for (std::size_t r = 0; r < options.max_restarts; ++r) {
    if (search.attempt(max_steps, deadline)) {
      return CycleCertificate{search.path()};
    }
    if (Clock::now() > deadline) break;
  }
  return std::nullopt;
}

CycleCertificate substitute_paths(const CycleCertificate& h,
                                  const ForcedMatching& m,
                                  std::span<const std::vector<Vertex>> paths) {
  if (m.edges.size() != paths.size()) {
    throw std::invalid_argument("one path per forced pair required");
  }
  std::unordered_map<std::uint64_t, std::size_t> by_pair;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    if (p.size() < 2) throw std::invalid_argument("path has fewer than 2 vertices");
    by_pair.emplace(edge_key(make_edge(p.front(), p.back())), i);
  }
  for (Edge e : m.edges) {
    if (!by_pair.contains(edge_key(make_edge(e.u, e.v)))) {
      throw std::invalid_argument("forced pair without a matching path");
    }
  }
  if (!traverses_matching(h, m)) {
    throw std::invalid_argument("cycle does not traverse every forced pair");
  }

  CycleCertificate out;
  const std::size_t len = h.order.size();
  std::vector<char> used(paths.size(), 0);
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex a = h.order[i];
    const Vertex b = h.order[(i + 1) % len];
    out.order.push_back(a);
    auto it = by_pair.find(edge_key(make_edge(a, b)));
    if (it == by_pair.end() || used[it->second]) continue;
    used[it->second] = 1;
    const auto& p = paths[it->second];
    if (p.front() == a) {
      out.order.insert(out.order.end(), p.begin() + 1, p.end() - 1);
    } else {
      out.order.insert(out.order.end(), p.rbegin() + 1, p.rend() - 1);
    }
  }
  return out;
}

bool verify_hamilton(const Graph& g, const CycleCertificate& c) {
  const std::size_t n = g.num_vertices();
  if (n < 3 || c.order.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : c.order) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.has_edge(c.order[i], c.order[(i + 1) % n])) return false;
  }
  return true;
}

bool traverses_matching(const CycleCertificate& c, const ForcedMatching& m) {
  std::unordered_map<Vertex, std::size_t> pos;
  for (std::size_t i = 0; i < c.order.size(); ++i) pos[c.order[i]] = i;
  const std::size_t len = c.order.size();
  for (Edge e : m.edges) {
    auto a = pos.find(e.u);
    auto b = pos.find(e.v);
    if (a == pos.end() || b == pos.end()) return false;
    const std::size_t d = a->second > b->second ? a->second - b->second
                                                : b->second - a->second;
    if (d != 1 && d != len - 1) return false;
  }
  return true;
}

}  // namespace hamsim
