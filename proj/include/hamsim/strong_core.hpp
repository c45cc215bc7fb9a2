#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hamsim/graph.hpp"

namespace hamsim {

enum class CoreColor : std::uint8_t { Black, Blue, Red };

/// Partition of V(G) induced by the strong k-core S: black = S,
/// blue = N(S) \ S, red = everything else.
struct CorePartition {
  std::size_t k = 0;
  std::vector<Vertex> black;
  std::vector<Vertex> blue;
  std::vector<Vertex> red;
  std::vector<CoreColor> color;  // indexed by vertex

  bool is_black(Vertex v) const { return color[v] == CoreColor::Black; }
  bool is_blue(Vertex v) const { return color[v] == CoreColor::Blue; }
  bool is_red(Vertex v) const { return color[v] == CoreColor::Red; }
};

/// Strong k-core: the maximal S such that every vertex of S ∪ N(S) has at
/// least k neighbours in S. Computed by peeling to a fixed point:
///   (a) drop u ∈ S with |N(u) ∩ S| < k;
///   (b) for u ∉ S with 0 < |N(u) ∩ S| < k, drop all of N(u) ∩ S.
/// Neither rule can remove a vertex of the maximal core, and a fixed point
/// satisfies the defining property, so the result is the maximal core.
CorePartition strong_core(const Graph& g, std::size_t k);

/// Union of every subset with the defining property, by enumeration.
/// Throws std::invalid_argument when n > 20.
std::vector<Vertex> strong_core_bruteforce(const Graph& g, std::size_t k);

/// True iff `s` satisfies the defining property in g.
bool has_strong_core_property(const Graph& g, const std::vector<Vertex>& s,
                              std::size_t k);

}  // namespace hamsim
