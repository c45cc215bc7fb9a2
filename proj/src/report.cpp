#include "hamsim/report.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace hamsim {

namespace {

constexpr std::array<std::pair<FailureCause, std::string_view>, 9> kCauseNames{{
    {FailureCause::Phase1Edges, "Phase1Edges"},
    {FailureCause::Phase1Blue, "Phase1Blue"},
    {FailureCause::Phase2TooManyPaths, "Phase2TooManyPaths"},
    {FailureCause::Phase3EndTooLarge, "Phase3EndTooLarge"},
    {FailureCause::Phase4Fanout, "Phase4Fanout"},
    {FailureCause::Phase5Unresolved, "Phase5Unresolved"},
    {FailureCause::MPhase4Fanout, "MPhase4Fanout"},
    {FailureCause::MPhase5Unresolved, "MPhase5Unresolved"},
    {FailureCause::CycleNotFound, "CycleNotFound"},
}};

nlohmann::json edge_json(Edge e) { return nlohmann::json::array({e.u, e.v}); }

}  // namespace

std::string_view to_string(FailureCause cause) {
  for (auto [c, name] : kCauseNames) {
    if (c == cause) return name;
  }
  return "Unknown";
}

FailureCause parse_failure_cause(std::string_view text) {
  for (auto [c, name] : kCauseNames) {
    if (name == text) return c;
  }
  throw std::invalid_argument("unknown failure cause: " + std::string(text));
}

int failure_phase(FailureCause cause) {
  switch (cause) {
    case FailureCause::Phase1Edges:
    case FailureCause::Phase1Blue:
      return 1;
    case FailureCause::Phase2TooManyPaths:
      return 2;
    case FailureCause::Phase3EndTooLarge:
      return 3;
    case FailureCause::Phase4Fanout:
    case FailureCause::MPhase4Fanout:
      return 4;
    case FailureCause::Phase5Unresolved:
    case FailureCause::MPhase5Unresolved:
      return 5;
    case FailureCause::CycleNotFound:
      return 0;
  }
  return 0;
}

std::string_view to_string(Variant v) {
  return v == Variant::Hamilton ? "hamilton" : "matching";
}

Variant parse_variant(std::string_view text) {
  if (text == "hamilton") return Variant::Hamilton;
  if (text == "matching") return Variant::Matching;
  throw std::invalid_argument("unknown variant: " + std::string(text));
}

nlohmann::json params_to_json(const RunParams& p) {
  return {
      {"variant", to_string(p.variant)},
      {"n", p.n},
      {"k", p.k},
      {"mode", to_string(p.mode)},
      {"seed", p.seed},
      {"multiplier", p.multiplier},
      {"time_budget_ms", p.time_budget_ms},
  };
}

RunParams params_from_json(const nlohmann::json& j) {
  RunParams p;
  p.variant = parse_variant(j.at("variant").get<std::string>());
  p.n = j.at("n").get<std::size_t>();
  p.k = j.at("k").get<std::size_t>();
  p.mode = parse_sampling_mode(j.at("mode").get<std::string>());
  p.seed = j.at("seed").get<std::uint64_t>();
  p.multiplier = j.value("multiplier", 1.0);
  p.time_budget_ms = j.value("time_budget_ms", std::int64_t{10000});
  return p;
}

nlohmann::json budgets_to_json(const Budgets& b) {
  return {
      {"t_eps", b.t_eps},   {"t1", b.t1},
      {"t2", b.t2},         {"t3", b.t3},
      {"t4", b.t4},         {"t5", b.t5},
      {"n_prime", b.n_prime},
      {"phase1_edges", b.phase1_edges},
      {"blue_threshold", b.blue_threshold},
      {"path_cap", b.path_cap},
      {"end_cap", b.end_cap},
      {"fanout_cap", b.fanout_cap},
      {"fanout_required", b.fanout_required()},
      {"long_path_threshold", b.long_path_threshold},
  };
}

Budgets budgets_from_json(const nlohmann::json& j, const RunParams& params) {
  Budgets b;
  b.n = params.n;
  b.k = params.k;
  b.multiplier = params.multiplier;
  b.log_n = std::log(static_cast<long double>(params.n));
  b.loglog_n = std::log(b.log_n);
  b.t_eps = j.at("t_eps").get<std::uint64_t>();
  b.t1 = j.at("t1").get<std::uint64_t>();
  b.t2 = j.at("t2").get<std::uint64_t>();
  b.t3 = j.at("t3").get<std::uint64_t>();
  b.t4 = j.at("t4").get<std::uint64_t>();
  b.t5 = j.at("t5").get<std::uint64_t>();
  b.n_prime = j.at("n_prime").get<std::size_t>();
  b.phase1_edges = j.at("phase1_edges").get<std::size_t>();
  b.blue_threshold = j.at("blue_threshold").get<double>();
  b.path_cap = j.at("path_cap").get<double>();
  b.end_cap = j.at("end_cap").get<double>();
  b.fanout_cap = j.at("fanout_cap").get<double>();
  b.long_path_threshold = j.at("long_path_threshold").get<double>();
  return b;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["params"] = params_to_json(r.params);
  j["budgets"] = budgets_to_json(r.budgets);

  nlohmann::json phases = nlohmann::json::object();
  for (const PhaseStats& s : r.phases) {
    nlohmann::json p = {
        {"first_round", s.first_round},
        {"last_round", s.last_round},
        {"rounds_used", s.last_round - s.first_round + 1},
        {"edges_selected", s.edges_selected},
        {"failure_cause", s.failure ? nlohmann::json(to_string(*s.failure)) : nlohmann::json()},
        {"metrics", s.metrics},
    };
    if (!s.detail.empty()) p["detail"] = s.detail;
    phases["phase" + std::to_string(s.phase)] = std::move(p);
  }
  j["per_phase"] = std::move(phases);

  j["totals"] = {
      {"success", r.success},
      {"failure_cause", r.failure ? nlohmann::json(to_string(*r.failure)) : nlohmann::json()},
      {"failure_phase", r.failure ? nlohmann::json(failure_phase(*r.failure)) : nlohmann::json()},
      {"failure_detail", r.failure_detail},
      {"rounds", r.rounds},
      {"last_selection_round", r.last_selection_round},
      {"edges_selected", r.edges_selected},
  };

  if (r.cycle) {
    j["certificate"] = {{"cycle", r.cycle->order}};
  } else if (r.matching) {
    nlohmann::json pairs = nlohmann::json::array();
    for (Edge e : r.matching->pairs) pairs.push_back(edge_json(e));
    j["certificate"] = {
        {"pairs", std::move(pairs)},
        {"unmatched", r.matching->unmatched ? nlohmann::json(*r.matching->unmatched)
                                            : nlohmann::json()},
    };
  } else {
    j["certificate"] = nullptr;
  }

  j["budget_check"] = {
      {"edges_within_budget", r.checks.edges_within_budget},
      {"rounds_within_schedule", r.checks.rounds_within_schedule},
      {"schedule_below_bound", r.checks.schedule_below_bound},
  };
  j["reference"] = {
      {"lower_bound_rounds", static_cast<double>(r.reference_rounds)},
      {"round_bound", static_cast<double>(r.round_bound)},
      {"edge_bound", static_cast<double>(r.edge_bound)},
  };
  return j;
}

void count_phase_edges(RunReport& r) {
  for (PhaseStats& s : r.phases) {
    s.edges_selected = 0;
    for (const Selection& sel : r.selected_log) {
      if (sel.round >= s.first_round && sel.round <= s.last_round) ++s.edges_selected;
    }
  }
}

}  // namespace hamsim
