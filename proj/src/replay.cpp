#include "hamsim/replay.hpp"

#include "hamsim/matching_builder.hpp"
#include "hamsim/trials.hpp"

namespace hamsim {

namespace {
constexpr const char* kReplayFormat = "hamsim-replay/1";

bool fail_with(std::string* why, std::string text) {
  if (why) *why = std::move(text);
  return false;
}
}  // namespace

nlohmann::json make_replay(const RunReport& r) {
  nlohmann::json log = nlohmann::json::array();
  for (const Selection& s : r.selected_log) {
    log.push_back({s.round, s.edge.u, s.edge.v});
  }
  nlohmann::json report = to_json(r);
  return {
      {"format", kReplayFormat},
      {"params", params_to_json(r.params)},
      {"selected_log", std::move(log)},
      {"certificate", report["certificate"]},
      {"budgets", report["budgets"]},
      {"report", std::move(report)},
  };
}

bool verify_replay_offline(const nlohmann::json& replay, std::string* why) {
  if (replay.value("format", "") != kReplayFormat) {
    return fail_with(why, "unrecognised replay format");
  }
  const RunParams p = params_from_json(replay.at("params"));
  Graph g(p.n);
  std::uint64_t last_round = 0;
  for (const auto& row : replay.at("selected_log")) {
    const auto round = row.at(0).get<std::uint64_t>();
    const auto u = row.at(1).get<Vertex>();
    const auto v = row.at(2).get<Vertex>();
    if (round <= last_round) return fail_with(why, "selection rounds not increasing");
    last_round = round;
    if (u >= p.n || v >= p.n || u == v || !g.add_edge(u, v)) {
      return fail_with(why, "invalid or repeated selection");
    }
  }
  const auto& cert = replay.at("certificate");
  if (cert.is_null()) return true;
  if (cert.contains("cycle")) {
    CycleCertificate c{cert.at("cycle").get<std::vector<Vertex>>()};
    if (!verify_hamilton(g, c)) return fail_with(why, "cycle certificate does not verify");
    return true;
  }
  MatchingCertificate m;
  for (const auto& e : cert.at("pairs")) {
    m.pairs.push_back(make_edge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>()));
  }
  if (!cert.at("unmatched").is_null()) m.unmatched = cert.at("unmatched").get<Vertex>();
  if (!verify_matching(g, m)) return fail_with(why, "matching certificate does not verify");
  return true;
}

ReplayCheck check_replay(const nlohmann::json& replay) {
  ReplayCheck out;
  std::string why;
  out.certificate_verifies = verify_replay_offline(replay, &why);
  const RunParams params = params_from_json(replay.at("params"));
  const RunReport again =
      replay.contains("budgets")
          ? run_single(params, budgets_from_json(replay.at("budgets"), params))
          : run_single(params);
  const nlohmann::json fresh = make_replay(again);
  out.log_matches = fresh.at("selected_log") == replay.at("selected_log");
  out.report_matches = !replay.contains("report") || fresh.at("report") == replay.at("report");
  if (!out.certificate_verifies) {
    out.message = why;
  } else if (!out.log_matches) {
    out.message = "re-simulation diverged from the stored selection log";
  } else if (!out.report_matches) {
    out.message = "re-simulation produced a different report";
  } else {
    out.message = "ok";
  }
  return out;
}

}  // namespace hamsim
