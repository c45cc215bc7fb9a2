#include "hamsim/matching_builder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hamsim/ham_builder.hpp"
#include "hamsim/rng.hpp"

namespace hamsim {

std::vector<Edge> MatchingState::matching() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < mate.size(); ++v) {
    if (mate[v] != kNoVertex && v < mate[v]) out.push_back({v, mate[v]});
  }
  return out;
}

std::size_t MatchingState::matching_size() const { return matching().size(); }

void MatchingState::match(Vertex a, Vertex b) {
  if (mate[a] != kNoVertex || mate[b] != kNoVertex) {
    throw std::logic_error("matching edge overlaps an existing one");
  }
  mate[a] = b;
  mate[b] = a;
}

MatchingState init_matching(const CorePartition& core) {
  const std::size_t n = core.color.size();
  MatchingState ms;
  ms.mate.assign(n, kNoVertex);
  ms.in_u.assign(n, 0);
  for (Vertex v : core.red) ms.in_u[v] = 1;
  ms.w = WPool(n, core.blue);
  ms.end_index.assign(n, -1);
  ms.claim_end.assign(n, -1);
  ms.claim_link.assign(n, kNoVertex);
  ms.claimed.assign(n, 0);
  return ms;
}

namespace {

template <typename Accept>
std::optional<std::size_t> first_acceptable(const PresentedRound& r, Accept&& ok) {
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    if (ok(r.pairs[i])) return i;
  }
  return std::nullopt;
}

}  // namespace

void m_phase2(ProcessState& state, const Budgets& b, MatchingState& ms) {
  auto free_u = [&](Vertex v) { return ms.in_u[v] && ms.mate[v] == kNoVertex; };
  run_window(
      state, b.t2,
      [&](const PresentedRound& r) {
        return first_acceptable(r, [&](Edge e) { return free_u(e.u) && free_u(e.v); });
      },
      [&](Edge e) { ms.match(e.u, e.v); });
}

void m_phase3(ProcessState& state, const Budgets& b, MatchingState& ms) {
  auto free_u = [&](Vertex v) { return ms.in_u[v] && ms.mate[v] == kNoVertex; };
  run_window(
      state, b.t3,
      [&](const PresentedRound& r) {
        return first_acceptable(r, [&](Edge e) {
          return (free_u(e.u) && ms.w.contains(e.v)) ||
                 (free_u(e.v) && ms.w.contains(e.u));
        });
      },
      [&](Edge e) {
        const Vertex wv = ms.w.contains(e.u) ? e.u : e.v;
        ms.w.take(wv);
        ms.w_used.push_back(wv);
        ms.match(e.u, e.v);
      });

  ms.end.clear();
  for (Vertex v = 0; v < ms.mate.size(); ++v) {
    if (free_u(v)) {
      ms.end_index[v] = static_cast<std::int32_t>(ms.end.size());
      ms.end.push_back(v);
    }
  }
  ms.end_v.assign(ms.end.size(), {});
  ms.resolved.assign(ms.end.size(), 0);
}

PhaseStatus m_phase4(ProcessState& state, const Budgets& b, MatchingState& ms) {
  auto link = [&](Vertex v, Vertex u) {
    const std::int32_t idx = ms.end_index[v];
    if (idx < 0) return false;
    if (static_cast<double>(ms.end_v[static_cast<std::size_t>(idx)].size()) >= b.fanout_cap) {
      return false;
    }
    return ms.in_u[u] && ms.mate[u] != kNoVertex && !ms.claimed[u];
  };
  run_window(
      state, b.t4,
      [&](const PresentedRound& r) {
        return first_acceptable(r, [&](Edge e) { return link(e.u, e.v) || link(e.v, e.u); });
      },
      [&](Edge e) {
        const Vertex v = link(e.u, e.v) ? e.u : e.v;
        const Vertex u = other_end(e, v);
        const Vertex partner = ms.mate[u];
        const auto idx = static_cast<std::size_t>(ms.end_index[v]);
        ms.end_v[idx].push_back(u);
        ms.claimed[u] = ms.claimed[partner] = 1;
        ms.claim_end[partner] = static_cast<std::int32_t>(idx);
        ms.claim_link[partner] = u;
        ms.phase4_edges.push_back(e);
      });

  const std::size_t required = b.fanout_required();
  for (std::size_t i = 0; i < ms.end.size(); ++i) {
    if (ms.end_v[i].size() < required) {
      return Failure{FailureCause::MPhase4Fanout,
                     "vertex " + std::to_string(ms.end[i]) + " linked to " +
                         std::to_string(ms.end_v[i].size()) + " of " +
                         std::to_string(required)};
    }
  }
  return std::nullopt;
}

PhaseStatus m_phase5(ProcessState& state, const Budgets& b, MatchingState& ms) {
  auto live = [&](Vertex partner) {
    const std::int32_t idx = ms.claim_end[partner];
    return idx >= 0 && !ms.resolved[static_cast<std::size_t>(idx)];
  };
  run_window(
      state, b.t5,
      [&](const PresentedRound& r) {
        return first_acceptable(r, [&](Edge e) {
          return (live(e.u) && ms.w.contains(e.v)) || (live(e.v) && ms.w.contains(e.u));
        });
      },
      [&](Edge e) {
        const Vertex partner = live(e.u) && ms.w.contains(e.v) ? e.u : e.v;
        const Vertex y = other_end(e, partner);
        const auto idx = static_cast<std::size_t>(ms.claim_end[partner]);
        const Vertex u = ms.claim_link[partner];
        const Vertex v = ms.end[idx];
        // Augment along v, u, partner, y.
        ms.mate[u] = kNoVertex;
        ms.mate[partner] = kNoVertex;
        ms.match(v, u);
        ms.match(partner, y);
        ms.w.take(y);
        ms.w_used.push_back(y);
        ms.resolved[idx] = 1;
      });

  std::size_t unresolved = 0;
  for (char r : ms.resolved) unresolved += !r;
  if (unresolved > 0) {
    return Failure{FailureCause::MPhase5Unresolved,
                   std::to_string(unresolved) + " End vertices unmatched"};
  }
  return std::nullopt;
}

Outcome<MatchingCertificate> finalize_matching(const MatchingState& ms,
                                               const Graph& builder,
                                               const CorePartition& core,
                                               const CycleSearchOptions& options) {
  std::vector<char> in_w_used(builder.num_vertices(), 0);
  for (Vertex v : ms.w_used) in_w_used[v] = 1;
  std::vector<Vertex> rest;
  for (Vertex v : core.black) rest.push_back(v);
  for (Vertex v : core.blue) {
    if (!in_w_used[v]) rest.push_back(v);
  }
  std::sort(rest.begin(), rest.end());

  MatchingCertificate cert;
  cert.pairs = ms.matching();
  std::vector<Vertex> order;
  if (rest.size() >= 3) {
    auto h = complete_cycle(induced_subgraph(builder, rest), ForcedMatching{}, options);
    if (!h) {
      return Failure{FailureCause::CycleNotFound,
                     "no Hamilton cycle on Z \\ W' within budget"};
    }
    for (Vertex v : h->order) order.push_back(rest[v]);
  } else {
    order = rest;
    if (order.size() == 2 && !builder.has_edge(order[0], order[1])) {
      return Failure{FailureCause::CycleNotFound, "leftover pair is not adjacent"};
    }
  }
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    cert.pairs.push_back(make_edge(order[i], order[i + 1]));
  }
  if (order.size() % 2 == 1) cert.unmatched = order.back();
  std::sort(cert.pairs.begin(), cert.pairs.end());
  return cert;
}

bool verify_matching(const Graph& g, const MatchingCertificate& c) {
  const std::size_t n = g.num_vertices();
  if (c.pairs.size() != n / 2) return false;
  std::vector<char> used(n, 0);
  for (Edge e : c.pairs) {
    if (!g.has_edge(e.u, e.v) || used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  if (n % 2 == 1) {
    return c.unmatched && *c.unmatched < n && !used[*c.unmatched];
  }
  return !c.unmatched;
}

MatchingRun run_matching(const RunParams& params) {
  return run_matching(params,
                      compute_matching_budgets(params.n, params.k, params.multiplier));
}

MatchingRun run_matching(const RunParams& params, const Budgets& budgets) {
  if (budgets.n != params.n || budgets.k != params.k) {
    throw std::invalid_argument("budgets do not match run parameters");
  }
  MatchingRun run;
  RunReport& r = run.report;
  r.params = params;
  r.params.variant = Variant::Matching;
  r.budgets = budgets;
  const Budgets& b = r.budgets;
  r.round_bound = matching_round_bound(params.n, params.k, params.multiplier);
  r.edge_bound = matching_edge_bound(params.n);
  r.reference_rounds = reference_lower_bound(params.n, params.k);

  ProcessState state(params.n, params.k, params.mode, params.seed);
  auto open = [&](int phase, std::uint64_t first, std::uint64_t last) -> PhaseStats& {
    PhaseStats s;
    s.phase = phase;
    s.first_round = first;
    s.last_round = last;
    r.phases.push_back(std::move(s));
    return r.phases.back();
  };
  auto fail = [&](PhaseStats* stats, const Failure& f) {
    r.failure = f.cause;
    r.failure_detail = f.detail;
    if (stats) {
      stats->failure = f.cause;
      stats->detail = f.detail;
    }
  };

  [&] {
    PhaseStats& s1 = open(1, 1, b.t1);
    auto p1 = phase1(state, b);
    if (!p1) {
      fail(&s1, p1.failure());
      run.core = strong_core(graph_from_edges(b.n, state.builder().edges()), kCoreK);
    } else {
      run.core = p1.value().core;
    }
    s1.metrics["seed_edges"] = static_cast<double>(state.builder().num_edges());
    s1.metrics["black"] = static_cast<double>(run.core.black.size());
    s1.metrics["blue"] = static_cast<double>(run.core.blue.size());
    s1.metrics["blue_threshold"] = b.blue_threshold;
    if (!p1) return;

    MatchingState& ms = run.state;
    ms = init_matching(run.core);
    PhaseStats& s2 = open(2, b.t1 + 1, b.t2);
    m_phase2(state, b, ms);
    s2.metrics["u_size"] = static_cast<double>(run.core.red.size());
    s2.metrics["matching_size"] = static_cast<double>(ms.matching_size());

    PhaseStats& s3 = open(3, b.t2 + 1, b.t3);
    m_phase3(state, b, ms);
    s3.metrics["end_remaining"] = static_cast<double>(ms.end.size());
    s3.metrics["w_available"] = static_cast<double>(ms.w.count);

    PhaseStats& s4 = open(4, b.t3 + 1, b.t4);
    if (auto st = m_phase4(state, b, ms)) {
      fail(&s4, *st);
      return;
    }
    PhaseStats& s5 = open(5, b.t4 + 1, b.t5);
    if (auto st = m_phase5(state, b, ms)) {
      fail(&s5, *st);
      return;
    }

    CycleSearchOptions opts;
    opts.time_budget = std::chrono::milliseconds(params.time_budget_ms);
    opts.seed = derive_seed(params.seed, kCycleStream);
    auto cert = finalize_matching(ms, state.builder(), run.core, opts);
    if (!cert) {
      fail(nullptr, cert.failure());
      return;
    }
    if (!verify_matching(state.builder(), cert.value())) {
      throw std::logic_error("assembled matching failed verification");
    }
    r.matching = std::move(cert.value());
    r.success = true;
  }();

  r.rounds = state.round();
  r.selected_log = state.selected_log();
  r.edges_selected = r.selected_log.size();
  r.last_selection_round = r.selected_log.empty() ? 0 : r.selected_log.back().round;
  count_phase_edges(r);
  r.checks.edges_within_budget =
      static_cast<long double>(r.edges_selected) <= r.edge_bound;
  r.checks.rounds_within_schedule = r.rounds <= b.t5;
  r.checks.schedule_below_bound = static_cast<long double>(b.t5) < r.round_bound;
  run.builder = state.builder();
  return run;
}

RunReport build_matching(const RunParams& params) { return run_matching(params).report; }

}  // namespace hamsim
