#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hamsim/graph.hpp"

namespace hamsim {

/// Vertex-disjoint oriented paths covering U, with the End multiset.
/// A length-0 path is a single vertex and contributes two End copies.
struct PathSystem {
  std::vector<std::vector<Vertex>> paths;
  std::vector<std::uint8_t> end_mult;  // per vertex
  std::vector<std::int32_t> owner;     // per vertex, -1 when off every path
  std::vector<std::uint32_t> position; // per vertex, index within its path
  std::vector<Edge> e2;
  std::vector<Edge> e3;

  std::size_t end_size() const;
  bool path_touches_end(std::size_t id) const;
  /// Rebuilds owner/position from paths.
  void reindex(std::size_t n);
};

/// Components of the edge set plus every vertex of `cover`, as paths
/// oriented lower endpoint first. Throws std::logic_error if a component is
/// not a path.
std::vector<std::vector<Vertex>> derive_paths(std::size_t n,
                                              std::span<const Vertex> cover,
                                              std::span<const Edge> edges);

/// Availability of W vertices; each may be consumed once.
struct WPool {
  std::vector<char> available;
  std::size_t count = 0;

  WPool() = default;
  WPool(std::size_t n, std::span<const Vertex> w);
  bool contains(Vertex v) const { return available[v] != 0; }
  void take(Vertex v);
};

}  // namespace hamsim
