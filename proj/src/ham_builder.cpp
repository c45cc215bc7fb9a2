#include "hamsim/ham_builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hamsim/rng.hpp"

namespace hamsim {

namespace {

PhaseStats& open_phase(RunReport& r, int phase, std::uint64_t first,
                       std::uint64_t last) {
  PhaseStats s;
  s.phase = phase;
  s.first_round = first;
  s.last_round = last;
  r.phases.push_back(std::move(s));
  return r.phases.back();
}

}  // namespace

Outcome<Phase1Result> phase1(ProcessState& state, const Budgets& b) {
  if (state.round() != 0) throw std::logic_error("phase1 must start at round 0");
  const auto n_prime = static_cast<Vertex>(b.n_prime);
  std::size_t selected = 0;
  run_window(
      state, b.t1,
      [&](const PresentedRound& r) -> std::optional<std::size_t> {
        if (selected >= b.phase1_edges) return std::nullopt;
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
          if (r.pairs[i].v < n_prime) return i;
        }
        return std::nullopt;
      },
      [&](Edge) { ++selected; });

  Phase1Result out;
  out.seed_graph = graph_from_edges(b.n, state.builder().edges());
  out.core = strong_core(out.seed_graph, kCoreK);
  if (selected < b.phase1_edges) {
    return Failure{FailureCause::Phase1Edges,
                   std::to_string(selected) + " of " +
                       std::to_string(b.phase1_edges) + " seed edges selected"};
  }
  if (static_cast<double>(out.core.blue.size()) <= b.blue_threshold) {
    return Failure{FailureCause::Phase1Blue,
                   "blue set has " + std::to_string(out.core.blue.size()) +
                       " vertices, threshold " + std::to_string(b.blue_threshold)};
  }
  return out;
}

Outcome<PathSystem> phase2(ProcessState& state, const Budgets& b,
                           const CorePartition& core) {
  const std::size_t n = b.n;
  std::vector<char> in_u(n, 0);
  for (Vertex v : core.red) in_u[v] = 1;

  // Endpoint bookkeeping for the growing path forest: for an endpoint x,
  // far[x] is the other end of its path and len[x] that path's length.
  std::vector<std::uint8_t> deg(n, 0);
  std::vector<Vertex> far(n);
  std::vector<std::uint32_t> len(n, 0);
  for (Vertex v = 0; v < n; ++v) far[v] = v;

  auto acceptable = [&](Edge e) {
    const Vertex a = e.u, c = e.v;
    if (!in_u[a] || !in_u[c] || deg[a] > 1 || deg[c] > 1) return false;
    if (len[a] >= b.long_path_threshold || len[c] >= b.long_path_threshold) return false;
    return far[a] != c;
  };

  PathSystem ps;
  run_window(
      state, b.t2,
      [&](const PresentedRound& r) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
          if (acceptable(r.pairs[i])) return i;
        }
        return std::nullopt;
      },
      [&](Edge e) {
        const Vertex fa = far[e.u], fc = far[e.v];
        const std::uint32_t joined = len[e.u] + len[e.v] + 1;
        far[fa] = fc;
        far[fc] = fa;
        len[fa] = len[fc] = joined;
        ++deg[e.u];
        ++deg[e.v];
        ps.e2.push_back(e);
      });

  ps.paths = derive_paths(n, core.red, ps.e2);
  ps.reindex(n);
  ps.end_mult.assign(n, 0);
  for (const auto& p : ps.paths) {
    if (p.size() == 1) {
      ps.end_mult[p.front()] = 2;
    } else {
      ps.end_mult[p.front()] = 1;
      ps.end_mult[p.back()] = 1;
    }
  }
  if (static_cast<double>(ps.paths.size()) > b.path_cap) {
    return Failure{FailureCause::Phase2TooManyPaths,
                   std::to_string(ps.paths.size()) + " paths exceed cap " +
                       std::to_string(b.path_cap)};
  }
  return ps;
}

PhaseStatus phase3(ProcessState& state, const Budgets& b, PathSystem& ps,
                   WPool& w) {
  const std::size_t n = b.n;
  run_window(
      state, b.t3,
      [&](const PresentedRound& r) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
          const Edge e = r.pairs[i];
          if ((ps.end_mult[e.u] > 0 && w.contains(e.v)) ||
              (ps.end_mult[e.v] > 0 && w.contains(e.u))) {
            return i;
          }
        }
        return std::nullopt;
      },
      [&](Edge e) {
        const Vertex end = ps.end_mult[e.u] > 0 ? e.u : e.v;
        --ps.end_mult[end];
        w.take(other_end(e, end));
        ps.e3.push_back(e);
      });

  std::vector<Vertex> cover;
  for (const auto& p : ps.paths) cover.insert(cover.end(), p.begin(), p.end());
  std::vector<Edge> edges = ps.e2;
  edges.insert(edges.end(), ps.e3.begin(), ps.e3.end());
  ps.paths = derive_paths(n, cover, edges);
  ps.reindex(n);

  const std::size_t remaining = ps.end_size();
  if (static_cast<double>(remaining) > b.end_cap) {
    return Failure{FailureCause::Phase3EndTooLarge,
                   std::to_string(remaining) + " End copies remain, cap " +
                       std::to_string(b.end_cap)};
  }
  return std::nullopt;
}

RewireState init_rewire(const PathSystem& ps, WPool w) {
  const std::size_t n = ps.end_mult.size();
  RewireState rw;
  rw.w = std::move(w);
  rw.p_plus.assign(ps.paths.size(), 0);
  for (std::size_t id = 0; id < ps.paths.size(); ++id) {
    rw.p_plus[id] = !ps.path_touches_end(id);
  }
  rw.fanout_owner.assign(n, -1);
  rw.first_copy.assign(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    for (std::uint8_t c = 0; c < ps.end_mult[v]; ++c) {
      if (c == 0) rw.first_copy[v] = static_cast<std::int32_t>(rw.copies.size());
      rw.copies.push_back(EndCopy{v, {}, {}, false});
    }
  }
  return rw;
}

PhaseStatus phase4(ProcessState& state, const Budgets& b, const PathSystem& ps,
                   RewireState& rw) {
  struct Hit {
    std::size_t copy;
    Vertex v, w;
  };
  // Copies of one vertex are filled in order.
  auto open_copy = [&](Vertex v) -> std::int32_t {
    const std::int32_t first = rw.first_copy[v];
    if (first < 0) return -1;
    for (auto c = static_cast<std::size_t>(first);
         c < rw.copies.size() && rw.copies[c].v == v; ++c) {
      if (static_cast<double>(rw.copies[c].fanout.size()) < b.fanout_cap) {
        return static_cast<std::int32_t>(c);
      }
    }
    return -1;
  };
  auto hit_of = [&](Vertex v, Vertex w) -> std::optional<Hit> {
    const std::int32_t c = open_copy(v);
    if (c < 0) return std::nullopt;
    const std::int32_t path = ps.owner[w];
    if (path < 0 || !rw.p_plus[static_cast<std::size_t>(path)]) return std::nullopt;
    if (ps.position[w] == 0) return std::nullopt;
    return Hit{static_cast<std::size_t>(c), v, w};
  };

  std::optional<Hit> pending;
  run_window(
      state, b.t4,
      [&](const PresentedRound& r) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
          const Edge e = r.pairs[i];
          pending = hit_of(e.u, e.v);
          if (!pending) pending = hit_of(e.v, e.u);
          if (pending) return i;
        }
        return std::nullopt;
      },
      [&](Edge e) {
        const auto path = static_cast<std::size_t>(ps.owner[pending->w]);
        const Vertex x = ps.paths[path][ps.position[pending->w] - 1];
        EndCopy& copy = rw.copies[pending->copy];
        copy.fanout.push_back(x);
        copy.claimed.push_back(path);
        rw.p_plus[path] = 0;
        rw.fanout_owner[x] = static_cast<std::int32_t>(pending->copy);
        rw.phase4_edges.push_back(e);
      });

  const std::size_t required = b.fanout_required();
  const EndCopy* worst = nullptr;
  for (const EndCopy& c : rw.copies) {
    if (!worst || c.fanout.size() < worst->fanout.size()) worst = &c;
  }
  if (worst && worst->fanout.size() < required) {
    return Failure{FailureCause::Phase4Fanout,
                   "vertex " + std::to_string(worst->v) + " reached fanout " +
                       std::to_string(worst->fanout.size()) + " of " +
                       std::to_string(required)};
  }
  return std::nullopt;
}

PhaseStatus phase5(ProcessState& state, const Budgets& b, const PathSystem& ps,
                   RewireState& rw) {
  auto live_fanout = [&](Vertex x) {
    const std::int32_t c = rw.fanout_owner[x];
    return c >= 0 && !rw.copies[static_cast<std::size_t>(c)].resolved;
  };
  run_window(
      state, b.t5,
      [&](const PresentedRound& r) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
          const Edge e = r.pairs[i];
          if ((live_fanout(e.u) && rw.w.contains(e.v)) ||
              (live_fanout(e.v) && rw.w.contains(e.u))) {
            return i;
          }
        }
        return std::nullopt;
      },
      [&](Edge e) {
        const Vertex x = live_fanout(e.u) && rw.w.contains(e.v) ? e.u : e.v;
        const Vertex y = other_end(e, x);
        EndCopy& copy = rw.copies[static_cast<std::size_t>(rw.fanout_owner[x])];
        const auto& path = ps.paths[static_cast<std::size_t>(ps.owner[x])];
        const Vertex succ = path[ps.position[x] + 1];
        rw.w.take(y);
        rw.e_plus.push_back(e);
        rw.e_plus.push_back(make_edge(copy.v, succ));
        rw.e_minus.push_back(make_edge(x, succ));
        copy.resolved = true;
        for (Vertex f : copy.fanout) rw.fanout_owner[f] = -1;
      });

  std::size_t unresolved = 0;
  for (const EndCopy& c : rw.copies) unresolved += !c.resolved;
  if (unresolved > 0) {
    return Failure{FailureCause::Phase5Unresolved,
                   std::to_string(unresolved) + " End copies unresolved"};
  }
  return std::nullopt;
}

std::vector<Edge> path_edge_set(const PathSystem& ps, const RewireState& rw) {
  std::vector<Edge> edges = ps.e2;
  edges.insert(edges.end(), ps.e3.begin(), ps.e3.end());
  edges.insert(edges.end(), rw.e_plus.begin(), rw.e_plus.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<Edge> minus = rw.e_minus;
  std::sort(minus.begin(), minus.end());
  std::vector<Edge> out;
  std::set_difference(edges.begin(), edges.end(), minus.begin(), minus.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<std::vector<Vertex>> assemble_paths(std::size_t n,
                                                const CorePartition& core,
                                                const PathSystem& ps,
                                                const RewireState& rw) {
  const std::vector<Edge> edges = path_edge_set(ps, rw);
  for (Edge e : edges) {
    if (core.is_black(e.u) || core.is_black(e.v)) {
      throw std::logic_error("path edge touches a black vertex");
    }
  }
  auto paths = derive_paths(n, core.red, edges);
  for (const auto& p : paths) {
    if (p.size() < 2 || !core.is_blue(p.front()) || !core.is_blue(p.back())) {
      throw std::logic_error("assembled path does not end in blue vertices");
    }
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      if (!core.is_red(p[i])) {
        throw std::logic_error("assembled path has a non-U interior vertex");
      }
    }
  }
  return paths;
}

HamiltonRun run_hamiltonian(const RunParams& params) {
  return run_hamiltonian(params, compute_budgets(params.n, params.k, params.multiplier));
}

HamiltonRun run_hamiltonian(const RunParams& params, const Budgets& budgets) {
  if (budgets.n != params.n || budgets.k != params.k) {
    throw std::invalid_argument("budgets do not match run parameters");
  }
  HamiltonRun run;
  RunReport& r = run.report;
  r.params = params;
  r.params.variant = Variant::Hamilton;
  r.budgets = budgets;
  const Budgets& b = r.budgets;
  r.round_bound = hamilton_round_bound(params.n, params.k, params.multiplier);
  r.edge_bound = static_cast<long double>(hamilton_edge_bound(params.n));
  r.reference_rounds = reference_lower_bound(params.n, params.k);

  ProcessState state(params.n, params.k, params.mode, params.seed);
  HamiltonTrace& trace = run.trace;

  auto fail = [&](PhaseStats* stats, const Failure& f) {
    r.failure = f.cause;
    r.failure_detail = f.detail;
    if (stats) {
      stats->failure = f.cause;
      stats->detail = f.detail;
    }
  };

  [&] {
    PhaseStats& s1 = open_phase(r, 1, 1, b.t1);
    auto p1 = phase1(state, b);
    if (!p1) {
      fail(&s1, p1.failure());
    }
    {
      // Metrics are recorded either way; Phase1Blue failures still have a core.
      Graph g = graph_from_edges(b.n, state.builder().edges());
      const CorePartition core = p1 ? p1.value().core : strong_core(g, kCoreK);
      const double d =
          static_cast<double>(b.phase1_edges) / static_cast<double>(b.n_prime);
      s1.metrics["seed_vertices"] = static_cast<double>(b.n_prime);
      s1.metrics["seed_edges"] = static_cast<double>(g.num_edges());
      s1.metrics["black"] = static_cast<double>(core.black.size());
      s1.metrics["blue"] = static_cast<double>(core.blue.size());
      s1.metrics["blue_threshold"] = b.blue_threshold;
      s1.metrics["blue_reference"] =
          0.1 * std::pow(2 * d, 3) * std::exp(-2 * d) * static_cast<double>(b.n_prime);
      trace.core = core;
    }
    if (!p1) return;

    PhaseStats& s2 = open_phase(r, 2, b.t1 + 1, b.t2);
    auto p2 = phase2(state, b, trace.core);
    s2.metrics["u_size"] = static_cast<double>(trace.core.red.size());
    s2.metrics["path_cap"] = b.path_cap;
    if (!p2) {
      fail(&s2, p2.failure());
      return;
    }
    trace.paths = std::move(p2.value());
    s2.metrics["paths"] = static_cast<double>(trace.paths.paths.size());
    s2.metrics["end_copies"] = static_cast<double>(trace.paths.end_size());

    PhaseStats& s3 = open_phase(r, 3, b.t2 + 1, b.t3);
    WPool w(b.n, trace.core.blue);
    const PhaseStatus st3 = phase3(state, b, trace.paths, w);
    s3.metrics["end_remaining"] = static_cast<double>(trace.paths.end_size());
    s3.metrics["end_cap"] = b.end_cap;
    s3.metrics["w_available"] = static_cast<double>(w.count);
    if (st3) {
      fail(&s3, *st3);
      return;
    }

    trace.rewire = init_rewire(trace.paths, std::move(w));
    PhaseStats& s4 = open_phase(r, 4, b.t3 + 1, b.t4);
    const PhaseStatus st4 = phase4(state, b, trace.paths, trace.rewire);
    s4.metrics["end_copies"] = static_cast<double>(trace.rewire.copies.size());
    s4.metrics["fanout_required"] = static_cast<double>(b.fanout_required());
    if (st4) {
      fail(&s4, *st4);
      return;
    }

    PhaseStats& s5 = open_phase(r, 5, b.t4 + 1, b.t5);
    const PhaseStatus st5 = phase5(state, b, trace.paths, trace.rewire);
    s5.metrics["w_available"] = static_cast<double>(trace.rewire.w.count);
    if (st5) {
      fail(&s5, *st5);
      return;
    }

    trace.pstar = assemble_paths(b.n, trace.core, trace.paths, trace.rewire);
    for (const auto& p : trace.pstar) {
      trace.contracted.edges.push_back(make_edge(p.front(), p.back()));
    }

    std::vector<Vertex> z = trace.core.black;
    z.insert(z.end(), trace.core.blue.begin(), trace.core.blue.end());
    std::sort(z.begin(), z.end());
    std::vector<Vertex> local(b.n, kNoVertex);
    for (std::size_t i = 0; i < z.size(); ++i) local[z[i]] = static_cast<Vertex>(i);
    const Graph gstar = induced_subgraph(state.builder(), z);
    ForcedMatching m_local;
    for (Edge e : trace.contracted.edges) {
      m_local.edges.push_back(make_edge(local[e.u], local[e.v]));
    }

    CycleSearchOptions opts;
    opts.time_budget = std::chrono::milliseconds(params.time_budget_ms);
    opts.seed = derive_seed(params.seed, kCycleStream);
    auto h = complete_cycle(gstar, m_local, opts);
    if (!h) {
      fail(nullptr, Failure{FailureCause::CycleNotFound,
                            "no cycle through the contracted paths within budget"});
      return;
    }
    for (Vertex& v : h->order) v = z[v];
    CycleCertificate full = substitute_paths(*h, trace.contracted, trace.pstar);
    if (!verify_hamilton(state.builder(), full)) {
      throw std::logic_error("assembled cycle failed verification");
    }
    r.cycle = std::move(full);
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

RunReport build_hamiltonian(const RunParams& params) {
  return run_hamiltonian(params).report;
}

std::vector<std::string> audit_hamilton(const HamiltonRun& run) {
  std::vector<std::string> bad;
  const RunReport& r = run.report;
  if (!r.success) return bad;
  const std::size_t n = r.params.n;
  const CorePartition& core = run.trace.core;
  const std::vector<Edge> edges = path_edge_set(run.trace.paths, run.trace.rewire);

  // Union-find over E_P: a repeated component means a cycle.
  std::vector<Vertex> parent(n);
  for (Vertex v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<std::size_t> deg(n, 0);
  for (Edge e : edges) {
    ++deg[e.u];
    ++deg[e.v];
    const Vertex a = find(e.u), c = find(e.v);
    if (a == c) {
      bad.push_back("E_P has a cycle through " + std::to_string(e.u) + "-" +
                    std::to_string(e.v));
    } else {
      parent[a] = c;
    }
    if (!run.builder.has_edge(e.u, e.v)) {
      bad.push_back("E_P edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                    " was never selected");
    }
  }
  // Endpoints per component; a U vertex's component must end in blue.
  std::vector<std::vector<Vertex>> ends(n);
  for (Vertex v = 0; v < n; ++v) {
    if (core.is_red(v) && deg[v] != 2) {
      bad.push_back("U vertex " + std::to_string(v) + " has E_P-degree " +
                    std::to_string(deg[v]));
    }
    if (core.is_blue(v) && deg[v] > 1) {
      bad.push_back("blue vertex " + std::to_string(v) + " has E_P-degree " +
                    std::to_string(deg[v]));
    }
    if (core.is_black(v) && deg[v] != 0) {
      bad.push_back("black vertex " + std::to_string(v) + " is on E_P");
    }
    if (deg[v] == 1) ends[find(v)].push_back(v);
  }
  for (Vertex v : core.red) {
    const auto& e = ends[find(v)];
    if (e.size() != 2 || !core.is_blue(e[0]) || !core.is_blue(e[1])) {
      bad.push_back("U vertex " + std::to_string(v) +
                    " is not on a path with two blue endpoints");
    }
  }
  if (static_cast<long double>(r.edges_selected) > r.edge_bound) {
    bad.push_back(std::to_string(r.edges_selected) + " selected edges exceed " +
                  std::to_string(static_cast<double>(r.edge_bound)));
  }
  if (r.rounds > r.budgets.t5) {
    bad.push_back(std::to_string(r.rounds) + " rounds exceed t5 = " +
                  std::to_string(r.budgets.t5));
  }
  return bad;
}

}  // namespace hamsim
