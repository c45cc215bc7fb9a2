#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <cmath>
#include <cstddef>

#include "hamsim/budgets.hpp"
#include "hamsim/graph.hpp"
#include "hamsim/report.hpp"
#include "hamsim/rng.hpp"

namespace hamsim::testing {

/// G(n, p) drawn from rng.
inline Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (rng.uniform() < p) g.add_edge(a, b);
    }
  }
  return g;
}

/// Desk-scale schedule that lets random runs reach every phase.
///
/// The default thresholds only bite asymptotically: at n in the thousands
/// the end cap is below one vertex and the blue set of a 10n'-edge seed
/// graph is empty. Here the seed graph covers 0.8n vertices at 5 edges per
/// vertex (just above the strong 4-core threshold, so blue is non-empty),
/// Phase-2 paths stop growing at 15 edges, Phase 3 is cut to 100n/K rounds so
/// some End copies survive into Phases 4-5, and those copies need fanout 2.
/// Round windows other than Phase 3 are the default ones.
inline Budgets calibrated_budgets(Variant variant, std::size_t n, std::size_t k,
                                  double multiplier = 1.0) {
  Budgets b = variant == Variant::Hamilton ? compute_budgets(n, k, multiplier)
                                           : compute_matching_budgets(n, k, multiplier);
  b.n_prime = n * 4 / 5;
  b.phase1_edges = 5 * b.n_prime;
  b.blue_threshold = 0;
  b.path_cap = static_cast<double>(n);
  b.end_cap = static_cast<double>(n) / 30;
  b.fanout_cap = 1.5;
  b.long_path_threshold = 15;
  const std::uint64_t phase3 = std::min<std::uint64_t>(100 * n / k, b.t3 - b.t2);
  const std::uint64_t cut = (b.t3 - b.t2) - phase3;
  b.t3 -= cut;
  b.t4 -= cut;
  b.t5 -= cut;
  return b;
}

inline RunParams params(Variant variant, std::size_t n, std::size_t k, std::uint64_t seed,
                        SamplingMode mode = SamplingMode::Missing) {
  RunParams p;
  p.variant = variant;
  p.n = n;
  p.k = k;
  p.seed = seed;
  p.mode = mode;
  return p;
}

inline std::size_t ceil_log(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
}

}  // namespace hamsim::testing
