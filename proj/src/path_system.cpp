#include "hamsim/path_system.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hamsim {

std::size_t PathSystem::end_size() const {
  std::size_t total = 0;
  for (auto m : end_mult) total += m;
  return total;
}

bool PathSystem::path_touches_end(std::size_t id) const {
  const auto& p = paths[id];
  return end_mult[p.front()] > 0 || end_mult[p.back()] > 0;
}

void PathSystem::reindex(std::size_t n) {
  owner.assign(n, -1);
  position.assign(n, 0);
  for (std::size_t id = 0; id < paths.size(); ++id) {
    for (std::size_t i = 0; i < paths[id].size(); ++i) {
      owner[paths[id][i]] = static_cast<std::int32_t>(id);
      position[paths[id][i]] = static_cast<std::uint32_t>(i);
    }
  }
}

std::vector<std::vector<Vertex>> derive_paths(std::size_t n,
                                              std::span<const Vertex> cover,
                                              std::span<const Edge> edges) {
  std::vector<std::array<Vertex, 2>> nbr(n, {kNoVertex, kNoVertex});
  std::vector<std::uint8_t> deg(n, 0);
  std::vector<char> relevant(n, 0);
  for (Vertex v : cover) relevant[v] = 1;
  for (Edge e : edges) {
    for (Vertex x : {e.u, e.v}) {
      if (deg[x] == 2) throw std::logic_error("vertex of degree > 2 in path edges");
      nbr[x][deg[x]++] = other_end(e, x);
      relevant[x] = 1;
    }
  }

  std::vector<std::vector<Vertex>> out;
  std::vector<char> done(n, 0);
  auto walk_from = [&](Vertex start) {
    std::vector<Vertex> p{start};
    done[start] = 1;
    Vertex prev = kNoVertex, cur = start;
    for (;;) {
      Vertex next = kNoVertex;
      for (std::uint8_t i = 0; i < deg[cur]; ++i) {
        if (nbr[cur][i] != prev) next = nbr[cur][i];
      }
      if (next == kNoVertex) break;
      if (done[next]) throw std::logic_error("path edges contain a cycle");
      done[next] = 1;
      p.push_back(next);
      prev = cur;
      cur = next;
    }
    if (p.back() < p.front()) std::reverse(p.begin(), p.end());
    out.push_back(std::move(p));
  };
  for (Vertex v = 0; v < n; ++v) {
    if (relevant[v] && !done[v] && deg[v] <= 1) walk_from(v);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (relevant[v] && !done[v]) throw std::logic_error("path edges contain a cycle");
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

WPool::WPool(std::size_t n, std::span<const Vertex> w) : available(n, 0) {
  for (Vertex v : w) {
    if (!available[v]) {
      available[v] = 1;
      ++count;
    }
  }
}

void WPool::take(Vertex v) {
  if (!available[v]) throw std::logic_error("W vertex already consumed");
  available[v] = 0;
  --count;
}

}  // namespace hamsim
