#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hamsim/replay.hpp"
#include "hamsim/trials.hpp"

using namespace hamsim;

namespace {

TrialConfig config(std::size_t n, std::size_t k, std::size_t trials,
                   Variant variant = Variant::Hamilton) {
  TrialConfig cfg;
  cfg.base.variant = variant;
  cfg.base.n = n;
  cfg.base.k = k;
  cfg.base.seed = 11;
  cfg.trials = trials;
  return cfg;
}

std::size_t count_lines(const std::string& s) {
  std::size_t lines = 0;
  for (char c : s) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_CASE("config validation") {
  TrialConfig cfg = config(100, 2, 1);
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config(15, 2, 1);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config(100, 0, 1);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config(100, 2, 1);
  cfg.base.multiplier = 0;
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
  CHECK_THROWS_AS(parse_variant("tour"), std::invalid_argument);
}

TEST_CASE("trial i uses seed + i") {
  const TrialConfig cfg = config(100, 2, 3);
  CHECK(cfg.params_for(0).seed == 11);
  CHECK(cfg.params_for(2).seed == 13);
}

TEST_CASE("parallel and serial runners agree") {
  for (Variant v : {Variant::Hamilton, Variant::Matching}) {
    TrialConfig cfg = config(300, 3, 6, v);
    cfg.jobs = 3;
    const std::string serial = to_json(aggregate(cfg, run_trials_serial(cfg))).dump();
    const std::string parallel = to_json(aggregate(cfg, run_trials_parallel(cfg))).dump();
    CHECK(serial == parallel);
  }
}

TEST_CASE("repeated runs give byte-identical reports") {
  const TrialConfig cfg = config(500, 4, 2);
  const std::string a = to_json(run_trials(cfg)).dump(2);
  const std::string b = to_json(run_trials(cfg)).dump(2);
  CHECK(a == b);
  CHECK(to_csv(run_trials(cfg)) == to_csv(run_trials(cfg)));
}

TEST_CASE("aggregate counts and reference lines") {
  const TrialConfig cfg = config(3000, 5, 10);
  const AggregateReport agg = run_trials(cfg);
  CHECK(agg.records.size() == 10);
  std::size_t failures = 0;
  for (const auto& [cause, count] : agg.failures_by_cause) failures += count;
  CHECK(agg.successes + failures == 10);
  std::size_t by_phase = 0;
  for (const auto& [phase, count] : agg.failures_by_phase) by_phase += count;
  CHECK(by_phase == failures);
  const double ref = (1 + std::log(3000.0) / 10) * 3000;
  CHECK(agg.reference_lower_bound == doctest::Approx(ref));

  const nlohmann::json j = to_json(agg);
  CHECK(j["reference"]["lower_bound_rounds"].get<double>() == doctest::Approx(ref));
  CHECK(j["trials"].size() == 10);
  for (const auto& t : j["trials"]) {
    CHECK(t["reference"]["lower_bound_rounds"].get<double>() == doctest::Approx(ref));
    CHECK(t.contains("budget_check"));
    CHECK(t["per_phase"].contains("phase1"));
  }
  CHECK(j["summary"]["trials"] == 10);
}

TEST_CASE("per-phase report fields") {
  RunParams p;
  p.n = 400;
  p.k = 3;
  p.seed = 2;
  const RunReport r = run_single(p);
  const nlohmann::json j = to_json(r);
  const auto& ph1 = j["per_phase"]["phase1"];
  CHECK(ph1["first_round"] == 1);
  CHECK(ph1["last_round"] == r.budgets.t1);
  CHECK(ph1["rounds_used"] == r.budgets.t1);
  CHECK(ph1["edges_selected"] == r.edges_selected);
  CHECK(j["totals"]["rounds"] == r.rounds);
  CHECK(j["budgets"]["t5"] == r.budgets.t5);
  CHECK(j["params"]["mode"] == "missing");
  CHECK(params_from_json(j["params"]).seed == 2);
  CHECK(budgets_from_json(j["budgets"], p).t5 == r.budgets.t5);
}

TEST_CASE("csv has one row per trial") {
  TrialConfig cfg = config(200, 2, 4);
  cfg.format = OutputFormat::Csv;
  const std::string csv = to_csv(run_trials(cfg));
  CHECK(count_lines(csv) == 5);
  CHECK(csv.rfind("trial,seed,variant,n,k,mode,multiplier,success", 0) == 0);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(row.rfind("0,11,hamilton,200,2,missing,", 0) == 0);
}

TEST_CASE("replay of a failed trial") {
  RunParams p;
  p.n = 300;
  p.k = 2;
  p.seed = 4;
  p.mode = SamplingMode::Unpresented;
  const RunReport r = run_single(p);
  const nlohmann::json replay = make_replay(r);
  CHECK(replay["format"] == "hamsim-replay/1");
  CHECK(replay["selected_log"].size() == r.edges_selected);
  std::string why;
  CHECK(verify_replay_offline(replay, &why));
  const ReplayCheck check = check_replay(replay);
  CHECK(check.ok());

  nlohmann::json tampered = replay;
  tampered["selected_log"][0][1] = tampered["selected_log"][1][1];
  tampered["selected_log"][0][2] = tampered["selected_log"][1][2];
  CHECK_FALSE(verify_replay_offline(tampered, &why));
  nlohmann::json other_seed = replay;
  other_seed["params"]["seed"] = 5;
  CHECK_FALSE(check_replay(other_seed).log_matches);
  nlohmann::json wrong_format = replay;
  wrong_format["format"] = "something-else";
  CHECK_FALSE(verify_replay_offline(wrong_format, &why));
}
