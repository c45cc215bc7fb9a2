#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamsim/report.hpp"

namespace hamsim {

enum class OutputFormat { Json, Csv };

struct TrialConfig {
  RunParams base;  // base.seed is the seed of trial 0; trial i uses seed + i
  std::size_t trials = 1;
  OutputFormat format = OutputFormat::Json;
  int jobs = 0;  // 0: OpenMP default

  /// Throws std::invalid_argument for trials < 1, n < 16 or K < 1.
  void validate() const;
  RunParams params_for(std::size_t index) const;
};

struct TrialRecord {
  std::size_t index = 0;
  RunReport report;
};

struct AggregateReport {
  TrialConfig config;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t cycle_not_found = 0;
  std::map<std::string, std::size_t> failures_by_cause;
  std::map<int, std::size_t> failures_by_phase;  // 0 = cycle engine
  double success_rate = 0;
  double mean_rounds = 0, max_rounds = 0;  // over successes
  double mean_edges = 0, max_edges = 0;    // over successes
  // Reference lines evaluated at the configuration.
  double reference_lower_bound = 0;
  double round_bound = 0;
  double edge_bound = 0;
  std::uint64_t schedule_t5 = 0;
  std::vector<TrialRecord> records;  // ordered by index
};

/// Dispatches on params.variant.
RunReport run_single(const RunParams& params);
/// Same with an explicit schedule.
RunReport run_single(const RunParams& params, const Budgets& b);

/// Reference implementation: trials one after another.
std::vector<TrialRecord> run_trials_serial(const TrialConfig& cfg);
/// OpenMP across trials; identical output to the serial runner.
std::vector<TrialRecord> run_trials_parallel(const TrialConfig& cfg);

AggregateReport aggregate(const TrialConfig& cfg, std::vector<TrialRecord> records);

/// Validates, runs in parallel and aggregates.
AggregateReport run_trials(const TrialConfig& cfg);

nlohmann::json to_json(const AggregateReport& a);
/// One row per trial, with a header line.
std::string to_csv(const AggregateReport& a);

}  // namespace hamsim
