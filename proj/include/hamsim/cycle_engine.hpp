#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hamsim/graph.hpp"

namespace hamsim {

/// Vertex-disjoint pairs that a Hamilton cycle must traverse. A pair need
/// not be an edge of the host graph.
struct ForcedMatching {
  std::vector<Edge> edges;
};

/// Cyclic vertex order.
struct CycleCertificate {
  std::vector<Vertex> order;

  friend bool operator==(const CycleCertificate&, const CycleCertificate&) = default;
};

struct CycleSearchOptions {
  std::chrono::milliseconds time_budget{10000};
  std::uint64_t seed = 0;
  std::size_t max_restarts = 5000;
  /// Instances with at most this many contracted nodes are solved exactly.
  std::size_t exact_node_limit = 18;
};

/// Hamilton cycle of g ∪ m traversing every pair of m, or nullopt when none
/// was found within the budget (or none exists: the exact path and the
/// degree pre-check are conclusive, the heuristic path is not).
///
/// Each forced pair is treated as a two-ported node that must be entered
/// at one side and left at the other. Large instances use rotation-extension
/// with random restarts; small ones an exact subset DP over those nodes.
/// Throws std::invalid_argument if m is not a matching on V(g).
std::optional<CycleCertificate> complete_cycle(const Graph& g,
                                               const ForcedMatching& m,
                                               const CycleSearchOptions& options);

/// Replaces each traversed pair (a, b) of m by the path with endpoints a, b.
/// Throws std::invalid_argument if h misses a pair or a path does not match.
CycleCertificate substitute_paths(const CycleCertificate& h,
                                  const ForcedMatching& m,
                                  std::span<const std::vector<Vertex>> paths);

/// True iff c visits every vertex of g once and consecutive vertices
/// (cyclically) are adjacent in g.
bool verify_hamilton(const Graph& g, const CycleCertificate& c);

/// True iff each pair of m appears consecutively (cyclically) in c.
bool traverses_matching(const CycleCertificate& c, const ForcedMatching& m);

/// Exhaustive Held-Karp search over vertices. Throws for n > 14.
std::optional<CycleCertificate> exact_hamilton(const Graph& g,
                                               const ForcedMatching& m);

}  // namespace hamsim
