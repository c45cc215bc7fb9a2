#include "hamsim/trials.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "hamsim/ham_builder.hpp"
#include "hamsim/matching_builder.hpp"

namespace hamsim {

void TrialConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (base.n < 16) throw std::invalid_argument("n must be at least 16");
  if (base.k < 1) throw std::invalid_argument("K must be at least 1");
  if (!(base.multiplier > 0)) throw std::invalid_argument("multiplier must be positive");
  if (base.time_budget_ms <= 0) throw std::invalid_argument("time budget must be positive");
}

RunParams TrialConfig::params_for(std::size_t index) const {
  RunParams p = base;
  p.seed = base.seed + index;
  return p;
}

RunReport run_single(const RunParams& params) {
  return params.variant == Variant::Hamilton ? build_hamiltonian(params)
                                             : build_matching(params);
}

RunReport run_single(const RunParams& params, const Budgets& b) {
  return params.variant == Variant::Hamilton ? run_hamiltonian(params, b).report
                                             : run_matching(params, b).report;
}

std::vector<TrialRecord> run_trials_serial(const TrialConfig& cfg) {
  std::vector<TrialRecord> out(cfg.trials);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    out[i].index = i;
    out[i].report = run_single(cfg.params_for(i));
  }
  return out;
}

std::vector<TrialRecord> run_trials_parallel(const TrialConfig& cfg) {
  std::vector<TrialRecord> out(cfg.trials);
  std::vector<std::exception_ptr> errors(cfg.trials);
  const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx].index = idx;
      out[idx].report = run_single(cfg.params_for(idx));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

AggregateReport aggregate(const TrialConfig& cfg, std::vector<TrialRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.index < b.index; });
  AggregateReport a;
  a.config = cfg;
  a.trials = records.size();
  double sum_rounds = 0, sum_edges = 0;
  for (const TrialRecord& t : records) {
    const RunReport& r = t.report;
    if (r.success) {
      ++a.successes;
      sum_rounds += static_cast<double>(r.rounds);
      sum_edges += static_cast<double>(r.edges_selected);
      a.max_rounds = std::max(a.max_rounds, static_cast<double>(r.rounds));
      a.max_edges = std::max(a.max_edges, static_cast<double>(r.edges_selected));
    } else if (r.failure) {
      ++a.failures_by_cause[std::string(to_string(*r.failure))];
      ++a.failures_by_phase[failure_phase(*r.failure)];
      if (*r.failure == FailureCause::CycleNotFound) ++a.cycle_not_found;
    }
  }
  if (a.trials > 0) a.success_rate = static_cast<double>(a.successes) / a.trials;
  if (a.successes > 0) {
    a.mean_rounds = sum_rounds / a.successes;
    a.mean_edges = sum_edges / a.successes;
  }
  const RunParams& p = cfg.base;
  a.reference_lower_bound = static_cast<double>(reference_lower_bound(p.n, p.k));
  if (p.variant == Variant::Hamilton) {
    a.round_bound = static_cast<double>(hamilton_round_bound(p.n, p.k, p.multiplier));
    a.edge_bound = static_cast<double>(hamilton_edge_bound(p.n));
    a.schedule_t5 = compute_budgets(p.n, p.k, p.multiplier).t5;
  } else {
    a.round_bound = static_cast<double>(matching_round_bound(p.n, p.k, p.multiplier));
    a.edge_bound = static_cast<double>(matching_edge_bound(p.n));
    a.schedule_t5 = compute_matching_budgets(p.n, p.k, p.multiplier).t5;
  }
  a.records = std::move(records);
  return a;
}

AggregateReport run_trials(const TrialConfig& cfg) {
  cfg.validate();
  return aggregate(cfg, run_trials_parallel(cfg));
}

nlohmann::json to_json(const AggregateReport& a) {
  nlohmann::json by_phase = nlohmann::json::object();
  for (auto [phase, count] : a.failures_by_phase) {
    by_phase[phase == 0 ? "cycle_engine" : "phase" + std::to_string(phase)] = count;
  }
  nlohmann::json trials = nlohmann::json::array();
  for (const TrialRecord& t : a.records) {
    nlohmann::json r = to_json(t.report);
    r["trial"] = t.index;
    trials.push_back(std::move(r));
  }
  return {
      {"config", {{"params", params_to_json(a.config.base)}, {"trials", a.config.trials}}},
      {"summary",
       {
           {"trials", a.trials},
           {"successes", a.successes},
           {"success_rate", a.success_rate},
           {"failures_by_cause", a.failures_by_cause},
           {"failures_by_phase", by_phase},
           {"cycle_not_found", a.cycle_not_found},
           {"mean_rounds_on_success", a.mean_rounds},
           {"max_rounds_on_success", a.max_rounds},
           {"mean_edges_on_success", a.mean_edges},
           {"max_edges_on_success", a.max_edges},
       }},
      {"reference",
       {
           {"lower_bound_rounds", a.reference_lower_bound},
           {"round_bound", a.round_bound},
           {"edge_bound", a.edge_bound},
           {"schedule_t5", a.schedule_t5},
       }},
      {"trials", std::move(trials)},
  };
}

std::string to_csv(const AggregateReport& a) {
  std::ostringstream os;
  os << "trial,seed,variant,n,k,mode,multiplier,success,failure_cause,"
        "failure_phase,rounds,last_selection_round,edges_selected,t5,edge_bound,"
        "round_bound,reference_rounds,edges_within_budget,rounds_within_schedule,"
        "schedule_below_bound\n";
  for (const TrialRecord& t : a.records) {
    const RunReport& r = t.report;
    const RunParams& p = r.params;
    os << t.index << ',' << p.seed << ',' << to_string(p.variant) << ',' << p.n << ','
       << p.k << ',' << to_string(p.mode) << ',' << p.multiplier << ',' << (r.success ? 1 : 0) << ','
       << (r.failure ? to_string(*r.failure) : "") << ','
       << (r.failure ? std::to_string(failure_phase(*r.failure)) : "") << ','
       << r.rounds << ',' << r.last_selection_round << ',' << r.edges_selected << ','
       << r.budgets.t5 << ',' << static_cast<double>(r.edge_bound) << ','
       << static_cast<double>(r.round_bound) << ','
       << static_cast<double>(r.reference_rounds) << ','
       << r.checks.edges_within_budget << ',' << r.checks.rounds_within_schedule << ','
       << r.checks.schedule_below_bound << '\n';
  }
  return os.str();
}

}  // namespace hamsim
