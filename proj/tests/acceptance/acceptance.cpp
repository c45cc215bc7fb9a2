// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "../support.hpp"
#include "hamsim/cycle_engine.hpp"
#include "hamsim/ham_builder.hpp"
#include "hamsim/matching_builder.hpp"
#include "hamsim/process.hpp"
#include "hamsim/replay.hpp"
#include "hamsim/strong_core.hpp"
#include "hamsim/trials.hpp"

using namespace hamsim;
using hamsim::testing::calibrated_budgets;
using hamsim::testing::ceil_log;
using hamsim::testing::params;
using hamsim::testing::random_graph;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string tally(const std::map<std::string, int>& counts) {
  std::string out;
  for (const auto& [name, c] : counts) {
    if (!out.empty()) out += ", ";
    out += name + " x" + std::to_string(c);
  }
  return out.empty() ? "none" : out;
}

std::string cause_name(const RunReport& r) {
  return r.failure ? std::string(to_string(*r.failure)) : "unknown";
}

// 1 ------------------------------------------------------------------------

Verdict strong_core_oracle() {
  const auto start = Clock::now();
  Rng rng(1001);
  const double ps[] = {0.2, 0.4, 0.6};
  int mismatches = 0, nonempty = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(11);
    const double p = ps[t % 3];
    const std::size_t k = 1 + (t / 3) % 4;
    const Graph g = random_graph(n, p, rng);
    const auto black = strong_core(g, k).black;
    mismatches += black != strong_core_bruteforce(g, k);
    nonempty += !black.empty();
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && secs < 10.0,
          fmt("500 graphs, %d mismatches, %d non-empty cores, %.2f s", mismatches, nonempty,
              secs)};
}

// 2 ------------------------------------------------------------------------

Verdict core_monotonicity() {
  Rng rng(2002);
  const double ps[] = {0.2, 0.4, 0.6};
  int violations = 0, black_red = 0, t = 0;
  while (t < 100) {
    const std::size_t n = 4 + rng.below(9);
    const Graph g = random_graph(n, ps[t % 3], rng);
    const Vertex a = static_cast<Vertex>(rng.below(n));
    const Vertex b = static_cast<Vertex>(rng.below(n));
    if (a == b || g.has_edge(a, b)) continue;
    const std::size_t k = 1 + rng.below(4);
    const CorePartition before = strong_core(g, k);
    const auto after = strong_core(with_edges(g, std::vector<Edge>{make_edge(a, b)}), k).black;
    const bool kept =
        std::includes(after.begin(), after.end(), before.black.begin(), before.black.end());
    if (!kept) {
      ++violations;
      black_red += (before.is_black(a) && before.is_red(b)) ||
                   (before.is_red(a) && before.is_black(b));
    }
    ++t;
  }
  return {violations == 0,
          fmt("100 (graph, edge) pairs, %d with black(g) not contained in black(g+e)"
              " (%d of them join black to red)",
              violations, black_red)};
}

// 3 ------------------------------------------------------------------------

Verdict sampling_uniformity() {
  ProcessState st(6, 2, SamplingMode::Missing, 3003);
  std::map<Edge, double> counts;
  const int rounds = 100000;
  for (int i = 0; i < rounds; ++i) {
    for (Edge e : present_round(st).pairs) counts[e] += 1;
  }
  if (counts.size() != 15) return {false, fmt("%zu distinct pairs seen", counts.size())};
  const double expected = 2.0 * rounds / 15.0;
  double stat = 0;
  for (const auto& [e, c] : counts) stat += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(14);
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  return {p > 0.001, fmt("chi-square %.2f on 14 df, p = %.4f", stat, p)};
}

// 4 ------------------------------------------------------------------------

struct AuditTally {
  int runs = 0, successes = 0, violations = 0, with_rewiring = 0;
  std::map<std::string, int> failures;
  std::string first_violation;
};

AuditTally audit_grid(bool calibrated) {
  struct Job {
    std::size_t n, k;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t n : {2000u, 5000u}) {
    for (std::size_t k : {std::size_t{1}, ceil_log(n)}) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) jobs.push_back({n, k, seed});
    }
  }
  std::vector<HamiltonRun> runs(jobs.size());
  std::vector<std::vector<std::string>> messages(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    const RunParams p = params(Variant::Hamilton, j.n, j.k, j.seed);
    const Budgets b = calibrated ? calibrated_budgets(Variant::Hamilton, j.n, j.k)
                                 : compute_budgets(j.n, j.k);
    HamiltonRun run = run_hamiltonian(p, b);
    messages[i] = audit_hamilton(run);
    run.builder = Graph(0);
    runs[i] = std::move(run);
  }
  AuditTally t;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ++t.runs;
    const RunReport& r = runs[i].report;
    if (!r.success) {
      ++t.failures[cause_name(r)];
      continue;
    }
    ++t.successes;
    t.with_rewiring += !runs[i].trace.rewire.e_plus.empty();
    t.violations += static_cast<int>(messages[i].size());
    if (!messages[i].empty() && t.first_violation.empty()) t.first_violation = messages[i][0];
  }
  return t;
}

Verdict path_structure_suite() {
  const AuditTally stated = audit_grid(false);
  const AuditTally calib = audit_grid(true);
  std::string detail =
      fmt("default schedule: %d/%d successes, %d violations (failures: %s); "
          "calibrated schedule: %d/%d successes (%d with rewiring), %d violations",
          stated.successes, stated.runs, stated.violations, tally(stated.failures).c_str(),
          calib.successes, calib.runs, calib.with_rewiring, calib.violations);
  if (!stated.first_violation.empty()) detail += "; " + stated.first_violation;
  if (!calib.first_violation.empty()) detail += "; " + calib.first_violation;
  return {stated.violations == 0 && calib.violations == 0, detail};
}

// 5 ------------------------------------------------------------------------

Verdict hamilton_end_to_end() {
  const std::size_t n = 3000, k = ceil_log(n);
  int verified = 0, engine_not_found = 0;
  std::map<std::string, int> phase_failures;
  double slowest = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto start = Clock::now();
    const HamiltonRun run = run_hamiltonian(params(Variant::Hamilton, n, k, seed));
    const double secs = seconds_since(start);
    slowest = std::max(slowest, secs);
    const RunReport& r = run.report;
    if (r.success) {
      verified += r.cycle && verify_hamilton(run.builder, *r.cycle) &&
                  r.checks.edges_within_budget && r.checks.rounds_within_schedule && secs < 60;
    } else if (r.failure == FailureCause::CycleNotFound) {
      ++engine_not_found;
    } else {
      ++phase_failures[cause_name(r)];
    }
  }
  return {verified >= 8 && slowest < 60,
          fmt("n=%zu K=%zu m=1: %d/10 verified cycles; cycle engine not found: %d; "
              "phase failures: %s; slowest trial %.1f s",
              n, k, verified, engine_not_found, tally(phase_failures).c_str(), slowest)};
}

// 6 ------------------------------------------------------------------------

Verdict cycle_engine_oracle() {
  Rng rng(6006);
  int disagreements = 0, bad_certificates = 0, with_cycle = 0, forced_instances = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 4 + rng.below(9);
    const double p = 0.3 + 0.1 * static_cast<double>(rng.below(5));
    const Graph g = random_graph(n, p, rng);
    ForcedMatching m;
    if (t % 2) {
      ++forced_instances;
      std::vector<Vertex> perm(n);
      for (Vertex i = 0; i < n; ++i) perm[i] = i;
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      const std::size_t pairs = 1 + rng.below(n / 2);
      for (std::size_t i = 0; i < pairs; ++i) {
        m.edges.push_back(make_edge(perm[2 * i], perm[2 * i + 1]));
      }
    }
    const Graph full = with_edges(g, m.edges);
    const auto truth = exact_hamilton(g, m);
    with_cycle += truth.has_value();
    for (std::size_t limit : {std::size_t{18}, std::size_t{0}}) {
      CycleSearchOptions o;
      o.seed = static_cast<std::uint64_t>(t);
      o.exact_node_limit = limit;
      const auto found = complete_cycle(g, m, o);
      disagreements += found.has_value() != truth.has_value();
      if (found) bad_certificates += !(verify_hamilton(full, *found) && traverses_matching(*found, m));
    }
  }
  return {disagreements == 0 && bad_certificates == 0,
          fmt("200 instances (%d with forced matchings, %d Hamiltonian), exact and "
              "rotation-extension paths: %d disagreements, %d invalid certificates",
              forced_instances, with_cycle, disagreements, bad_certificates)};
}

// 7 ------------------------------------------------------------------------

Verdict matching_pipeline() {
  const std::size_t k = ceil_log(3000);
  bool pass = true;
  std::string detail;
  for (std::size_t n : {3000u, 3001u}) {
    int verified = 0;
    std::map<std::string, int> failures;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const MatchingRun run = run_matching(params(Variant::Matching, n, k, seed));
      const RunReport& r = run.report;
      if (!r.success) {
        ++failures[cause_name(r)];
        continue;
      }
      const bool ok = r.matching && verify_matching(run.builder, *r.matching) &&
                      r.matching->pairs.size() == n / 2 &&
                      static_cast<long double>(r.edges_selected) <= matching_edge_bound(n) &&
                      static_cast<long double>(r.rounds) <= matching_round_bound(n, k, 1.0);
      verified += ok;
    }
    pass = pass && verified >= 8;
    if (!detail.empty()) detail += "; ";
    detail += fmt("n=%zu K=%zu: %d/10 verified matchings (failures: %s)", n, k, verified,
                  tally(failures).c_str());
  }
  return {pass, detail};
}

// 8 ------------------------------------------------------------------------

Verdict budget_regression() {
  int checked = 0, violations = 0;
  long double min_margin = 1e30L;
  for (std::size_t n : {1000u, 10000u, 100000u, 1000000u, 10000000u}) {
    for (std::size_t k : {std::size_t{1}, ceil_log(n)}) {
      const Budgets b = compute_budgets(n, k, 1.0);
      const long double bound = hamilton_round_bound(n, k, 1.0);
      const long double margin = bound - static_cast<long double>(b.t5);
      ++checked;
      violations += !(static_cast<long double>(b.t5) < bound);
      min_margin = std::min(min_margin, margin);
    }
  }
  return {violations == 0, fmt("%d (n, K) points, %d violations, smallest margin %.3Lf rounds",
                               checked, violations, min_margin)};
}

// 9 ------------------------------------------------------------------------

Verdict determinism_and_replay() {
  int configs = 0, differing = 0;
  auto twice = [&](const TrialConfig& cfg) {
    ++configs;
    const std::string a = to_json(run_trials(cfg)).dump(2);
    const std::string b = to_json(run_trials(cfg)).dump(2);
    differing += a != b || to_csv(run_trials(cfg)) != to_csv(run_trials(cfg));
  };
  for (Variant v : {Variant::Hamilton, Variant::Matching}) {
    for (SamplingMode mode : {SamplingMode::Missing, SamplingMode::Unpresented}) {
      TrialConfig cfg;
      cfg.base = params(v, 600, 4, 90, mode);
      cfg.trials = 3;
      twice(cfg);
    }
  }
  // Successful runs on the calibrated schedule.
  std::vector<RunReport> successes;
  for (Variant v : {Variant::Hamilton, Variant::Matching}) {
    const RunParams p = params(v, 1200, 6, 1);
    const Budgets b = calibrated_budgets(v, 1200, 6);
    ++configs;
    const RunReport r = run_single(p, b);
    differing += to_json(r).dump() != to_json(run_single(p, b)).dump();
    if (r.success) successes.push_back(r);
  }

  int replays_ok = 0;
  const auto dir = std::filesystem::temp_directory_path();
  for (const RunReport& r : successes) {
    const auto path = dir / ("hamsim_acceptance_" + std::string(to_string(r.params.variant)) +
                             ".replay.json");
    {
      std::ofstream out(path);
      out << make_replay(r).dump();
    }
    std::ifstream in(path);
    const nlohmann::json back = nlohmann::json::parse(in);
    std::filesystem::remove(path);
    replays_ok += verify_replay_offline(back) && check_replay(back).ok();
  }
  const bool pass = differing == 0 && successes.size() == 2 && replays_ok == 2;
  return {pass, fmt("%d configs run twice, %d differ; %d/%zu stored replays re-verify", configs,
                    differing, replays_ok, successes.size())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "strong-core oracle equivalence", strong_core_oracle},
      {2, "core monotonicity", core_monotonicity},
      {3, "sampling uniformity", sampling_uniformity},
      {4, "path-structure suite", path_structure_suite},
      {5, "end-to-end Hamiltonicity", hamilton_end_to_end},
      {6, "cycle engine oracle agreement", cycle_engine_oracle},
      {7, "matching pipeline", matching_pipeline},
      {8, "budget regression", budget_regression},
      {9, "determinism and replay", determinism_and_replay},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] criterion %d (PRIMARY) %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id,
                c.name, v.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d passed, %d failed\n", criteria.size(),
              static_cast<int>(criteria.size()) - failed, failed);
  return failed == 0 ? 0 : 1;
}
