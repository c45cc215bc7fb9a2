#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace hamsim {

/// Round windows and thresholds of the five-phase schedule. Logarithms are
/// natural. Phase i runs rounds (t_{i-1}, t_i].
struct Budgets {
  std::size_t n = 0;
  std::size_t k = 0;
  double multiplier = 1.0;     // scales t_eps only
  long double log_n = 0;
  long double loglog_n = 0;

  std::uint64_t t_eps = 0;
  std::uint64_t t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0;

  std::size_t n_prime = 0;       // ceil(n / loglog n)
  std::size_t phase1_edges = 0;  // 10 n' by default
  double blue_threshold = 0;     // 1e-6 n'
  double path_cap = 0;           // n / (loglog n)^2
  double end_cap = 0;            // n / log^5 n
  double fanout_cap = 0;         // log^0.8 n
  double long_path_threshold = 0;  // 0.5 log n

  /// Fanout every End copy must reach for Phase 4 to succeed.
  std::size_t fanout_required() const {
    return static_cast<std::size_t>(std::ceil(fanout_cap));
  }
};

/// Schedule for the Hamilton-cycle builder:
///   t_eps = m * 50 (1 + log n / 2K) n / loglog n
///   t1 = t_eps, t2 = t1 + t_eps + n, t3 = t2 + t_eps,
///   t4 = t3 + t_eps + n log n / 2K, t5 = t4 + t_eps.
/// Fractional terms are floored. Throws std::invalid_argument for n < 16
/// (loglog n must exceed 1) or K == 0 or m <= 0.
Budgets compute_budgets(std::size_t n, std::size_t k, double multiplier = 1.0);

/// Schedule for the matching builder: same shape with (0.5 + log n / 2K) in
/// t_eps and a Phase-2 window of ceil(n/2) extra rounds.
Budgets compute_matching_budgets(std::size_t n, std::size_t k,
                                 double multiplier = 1.0);

/// (1 + 250 m / loglog n)(1 + log n / 2K) n
long double hamilton_round_bound(std::size_t n, std::size_t k, double multiplier);
/// (1 + 250 m / loglog n)(0.5 + log n / 2K) n
long double matching_round_bound(std::size_t n, std::size_t k, double multiplier);
/// n + 11 n'
std::size_t hamilton_edge_bound(std::size_t n);
/// (0.5 + 11 / loglog n) n
long double matching_edge_bound(std::size_t n);
/// (1 + log n / 2K) n, the round lower bound for any strategy.
long double reference_lower_bound(std::size_t n, std::size_t k);

}  // namespace hamsim
