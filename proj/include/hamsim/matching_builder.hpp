#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hamsim/budgets.hpp"
#include "hamsim/cycle_engine.hpp"
#include "hamsim/outcome.hpp"
#include "hamsim/path_system.hpp"
#include "hamsim/process.hpp"
#include "hamsim/report.hpp"
#include "hamsim/strong_core.hpp"

namespace hamsim {

struct MatchingState {
  std::vector<Vertex> mate;  // per vertex, kNoVertex when unmatched
  std::vector<char> in_u;
  WPool w;                    // W vertices still free
  std::vector<Vertex> w_used; // W': W vertices consumed by the matching

  // Filled after Phase 3.
  std::vector<Vertex> end;                 // unmatched U vertices
  std::vector<std::vector<Vertex>> end_v;  // per End index: linked matched U vertices
  std::vector<char> resolved;              // per End index
  std::vector<std::int32_t> end_index;     // vertex -> End index or -1
  // For a partner u' of a Phase-4 linked vertex u: owning End index and u.
  std::vector<std::int32_t> claim_end;
  std::vector<Vertex> claim_link;
  std::vector<char> claimed;  // endpoint of a claimed matching edge

  std::vector<Edge> phase4_edges;

  std::vector<Edge> matching() const;
  std::size_t matching_size() const;
  void match(Vertex a, Vertex b);
};

MatchingState init_matching(const CorePartition& core);

/// Rounds t1+1..t2: greedy matching inside U.
void m_phase2(ProcessState& state, const Budgets& b, MatchingState& ms);
/// Rounds t2+1..t3: match leftover U vertices to free W vertices; End is
/// what remains unmatched.
void m_phase3(ProcessState& state, const Budgets& b, MatchingState& ms);
/// Rounds t3+1..t4: link each End vertex to ceil(log^0.8 n) matched U
/// vertices, each matching edge claimed at most once.
PhaseStatus m_phase4(ProcessState& state, const Budgets& b, MatchingState& ms);
/// Rounds t4+1..t5: for End vertex v linked to u with partner u', take a
/// pair u'y with y a free W vertex and augment along v, u, u', y.
PhaseStatus m_phase5(ProcessState& state, const Budgets& b, MatchingState& ms);

/// M ∪ M', where M' takes alternate edges of a Hamilton cycle of the
/// builder restricted to Z \ W'.
Outcome<MatchingCertificate> finalize_matching(const MatchingState& ms,
                                               const Graph& builder,
                                               const CorePartition& core,
                                               const CycleSearchOptions& options);

/// True iff the certificate is a matching of size floor(n/2) in g, with
/// the unmatched vertex (odd n) reported correctly.
bool verify_matching(const Graph& g, const MatchingCertificate& c);

struct MatchingRun {
  RunReport report;
  MatchingState state;
  CorePartition core;
  Graph builder;
};

MatchingRun run_matching(const RunParams& params);
/// Explicit schedule; b.n and b.k must agree with params.
MatchingRun run_matching(const RunParams& params, const Budgets& b);
RunReport build_matching(const RunParams& params);

}  // namespace hamsim
