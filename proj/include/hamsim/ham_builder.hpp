#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hamsim/budgets.hpp"
#include "hamsim/cycle_engine.hpp"
#include "hamsim/graph.hpp"
#include "hamsim/outcome.hpp"
#include "hamsim/path_system.hpp"
#include "hamsim/process.hpp"
#include "hamsim/report.hpp"
#include "hamsim/strong_core.hpp"

namespace hamsim {

/// Core parameter used throughout the builders.
inline constexpr std::size_t kCoreK = 4;

struct Phase1Result {
  Graph seed_graph;    // G' on [n'] (vertices >= n' isolated)
  CorePartition core;  // strong 4-core partition of G' over all of [n]
};

/// Rounds 1..t1: while fewer than phase1_edges edges are selected, take the
/// first presented pair inside [n'].
Outcome<Phase1Result> phase1(ProcessState& state, const Budgets& b);

/// Rounds t1+1..t2: greedy path cover of U = red vertices. A pair is taken
/// when both ends are in U with Phase-2 degree <= 1, neither lies on a path
/// of length >= 0.5 log n, and they are not the two ends of one path.
Outcome<PathSystem> phase2(ProcessState& state, const Budgets& b,
                           const CorePartition& core);

/// Rounds t2+1..t3: match End copies to distinct W vertices.
PhaseStatus phase3(ProcessState& state, const Budgets& b, PathSystem& ps,
                   WPool& w);

/// One copy of an End vertex (length-0 paths have two).
struct EndCopy {
  Vertex v = kNoVertex;
  std::vector<Vertex> fanout;        // End_v: predecessors of hit vertices
  std::vector<std::size_t> claimed;  // P_v: path ids, parallel to fanout
  bool resolved = false;
};

struct RewireState {
  std::vector<char> p_plus;  // per path id
  std::vector<EndCopy> copies;
  std::vector<std::int32_t> fanout_owner;  // vertex -> copy index or -1
  std::vector<std::int32_t> first_copy;    // vertex -> first copy index or -1
  std::vector<Edge> phase4_edges;
  std::vector<Edge> e_plus;
  std::vector<Edge> e_minus;
  WPool w;
};

/// P+ = paths without an End endpoint; one EndCopy per End multiplicity.
RewireState init_rewire(const PathSystem& ps, WPool w);

/// Rounds t3+1..t4: build fanout for each End copy by claiming P+ paths.
PhaseStatus phase4(ProcessState& state, const Budgets& b, const PathSystem& ps,
                   RewireState& rw);

/// Rounds t4+1..t5: resolve each End copy through one claimed path by an
/// edge from a fanout vertex x to a fresh W vertex; the path edge
/// (x, succ(x)) is dropped and the Phase-4 edge (v, succ(x)) kept.
PhaseStatus phase5(ProcessState& state, const Budgets& b, const PathSystem& ps,
                   RewireState& rw);

/// E_P = (E2 ∪ E3 ∪ E+) \ E- as paths with blue endpoints and U interiors.
/// Throws std::logic_error on any structural violation.
std::vector<std::vector<Vertex>> assemble_paths(std::size_t n,
                                                const CorePartition& core,
                                                const PathSystem& ps,
                                                const RewireState& rw);

/// Edge set (E2 ∪ E3 ∪ E+) \ E-, sorted.
std::vector<Edge> path_edge_set(const PathSystem& ps, const RewireState& rw);

/// Intermediate artefacts of one run, for audits.
struct HamiltonTrace {
  CorePartition core;
  PathSystem paths;
  RewireState rewire;
  std::vector<std::vector<Vertex>> pstar;
  ForcedMatching contracted;
};

struct HamiltonRun {
  RunReport report;
  HamiltonTrace trace;
  Graph builder;
};

HamiltonRun run_hamiltonian(const RunParams& params);

/// Same, with an explicit schedule instead of compute_budgets(n, K, m).
/// b.n and b.k must agree with params.
HamiltonRun run_hamiltonian(const RunParams& params, const Budgets& b);

/// Orchestrates phases 1-5, path assembly and cycle completion.
RunReport build_hamiltonian(const RunParams& params);

/// Structural audit of a successful run, recomputed from the trace without
/// assemble_paths: E_P acyclic; E_P-degree 2 on U, <= 1 on blue, 0 on
/// black; the E_P paths cover U and end in blue vertices; selected edges
/// within n + 11 n'; rounds within t5. Returns one message per violation.
std::vector<std::string> audit_hamilton(const HamiltonRun& run);

}  // namespace hamsim
