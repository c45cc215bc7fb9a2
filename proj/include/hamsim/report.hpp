#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hamsim/budgets.hpp"
#include "hamsim/cycle_engine.hpp"
#include "hamsim/outcome.hpp"
#include "hamsim/process.hpp"

namespace hamsim {

enum class Variant { Hamilton, Matching };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

/// Everything needed to reproduce one trial.
struct RunParams {
  Variant variant = Variant::Hamilton;
  std::size_t n = 0;
  std::size_t k = 1;
  SamplingMode mode = SamplingMode::Missing;
  std::uint64_t seed = 0;
  double multiplier = 1.0;
  std::int64_t time_budget_ms = 10000;
};

struct PhaseStats {
  int phase = 0;
  std::uint64_t first_round = 0;  // window is [first_round, last_round]
  std::uint64_t last_round = 0;
  std::size_t edges_selected = 0;
  std::optional<FailureCause> failure;
  std::string detail;
  std::map<std::string, double> metrics;
};

/// Perfect (or near-perfect, for odd n) matching in the builder graph.
struct MatchingCertificate {
  std::vector<Edge> pairs;
  std::optional<Vertex> unmatched;
};

struct BudgetCheck {
  bool edges_within_budget = false;    // selected edges <= edge bound
  bool rounds_within_schedule = false; // rounds used <= t5
  bool schedule_below_bound = false;   // t5 < round bound
};

struct RunReport {
  RunParams params;
  Budgets budgets;
  std::vector<PhaseStats> phases;
  bool success = false;
  std::optional<FailureCause> failure;
  std::string failure_detail;
  std::uint64_t rounds = 0;
  std::uint64_t last_selection_round = 0;
  std::size_t edges_selected = 0;
  std::optional<CycleCertificate> cycle;
  std::optional<MatchingCertificate> matching;
  BudgetCheck checks;
  long double round_bound = 0;     // asymptotic round budget
  long double edge_bound = 0;      // asymptotic edge budget
  long double reference_rounds = 0;  // (1 + log n / 2K) n lower bound

  /// Kept for replay files; not part of the JSON report.
  std::vector<Selection> selected_log;
};

nlohmann::json params_to_json(const RunParams& p);
RunParams params_from_json(const nlohmann::json& j);
nlohmann::json budgets_to_json(const Budgets& b);
/// Inverse of budgets_to_json; n, K and m come from params.
Budgets budgets_from_json(const nlohmann::json& j, const RunParams& params);
nlohmann::json to_json(const RunReport& r);

/// Fills the per-phase edge counts from the selection log.
void count_phase_edges(RunReport& r);

}  // namespace hamsim
