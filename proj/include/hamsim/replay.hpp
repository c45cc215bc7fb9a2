#pragma once

#include <string>

#include <json.hpp>

#include "hamsim/report.hpp"

namespace hamsim {

/// Replay file: {"format": "hamsim-replay/1", "params": {...},
/// "selected_log": [[round, u, v], ...], "certificate": ...,
/// "budgets": {...}, "report": {...}}. Re-simulation uses the stored budgets.
nlohmann::json make_replay(const RunReport& r);

struct ReplayCheck {
  bool log_matches = false;          // re-simulation reproduced selected_log
  bool report_matches = false;       // and the same JSON report
  bool certificate_verifies = false; // stored certificate valid in the logged graph
  std::string message;

  bool ok() const { return log_matches && report_matches && certificate_verifies; }
};

/// Checks a stored certificate against the graph rebuilt from the stored
/// selection log only, without re-simulating. A replay without a
/// certificate (failed trial) verifies vacuously when its log is well formed.
bool verify_replay_offline(const nlohmann::json& replay, std::string* why = nullptr);

/// Re-runs the trial from its parameters and compares against the file.
ReplayCheck check_replay(const nlohmann::json& replay);

}  // namespace hamsim
