// hamsim: run, replay and verify trials of the online Hamilton-cycle and
// perfect-matching builders.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hamsim/graph.hpp"
#include "hamsim/replay.hpp"
#include "hamsim/strong_core.hpp"
#include "hamsim/trials.hpp"

namespace fs = std::filesystem;
using namespace hamsim;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online Hamilton cycle / perfect matching builder for the "
               "K-choice random graph process"};
  app.require_subcommand(1);

  // run
  TrialConfig cfg;
  std::string mode = "missing", variant = "hamilton", format = "json", out_path,
              replay_dir;
  auto* run = app.add_subcommand("run", "run independent trials and report");
  run->add_option("--n", cfg.base.n, "number of vertices (>= 16)")->required();
  run->add_option("--k", cfg.base.k, "pairs presented per round")->default_val(1);
  run->add_option("--mode", mode, "missing | unpresented")->default_val("missing");
  run->add_option("--variant", variant, "hamilton | matching")->default_val("hamilton");
  run->add_option("--seed", cfg.base.seed, "seed of trial 0; trial i uses seed+i")
      ->default_val(1);
  run->add_option("--trials", cfg.trials, "number of trials")->default_val(1);
  run->add_option("--multiplier", cfg.base.multiplier, "scale of the t_eps windows")
      ->default_val(1.0);
  run->add_option("--time-budget-ms", cfg.base.time_budget_ms,
                  "cycle search budget per trial")
      ->default_val(10000);
  run->add_option("--jobs", cfg.jobs, "parallel trials (0 = all cores)")->default_val(0);
  run->add_option("--format", format, "json | csv")->default_val("json");
  run->add_option("--out", out_path, "output file (default stdout)");
  run->add_option("--replay-dir", replay_dir, "write one replay file per trial here");

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "re-simulate a replay file and compare");
  replay->add_option("file", replay_path)->required();

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "check a replay file's certificate offline");
  verify->add_option("file", verify_path)->required();

  std::string edges_path, dot_path;
  std::size_t core_k = 4;
  auto* core = app.add_subcommand("core", "strong k-core partition of an edge list");
  core->add_option("edges", edges_path, "edge-list file")->required();
  core->add_option("--core-k", core_k, "core parameter")->default_val(4);
  core->add_option("--dot", dot_path, "also write the graph as DOT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      cfg.base.mode = parse_sampling_mode(mode);
      cfg.base.variant = parse_variant(variant);
      if (format == "json") {
        cfg.format = OutputFormat::Json;
      } else if (format == "csv") {
        cfg.format = OutputFormat::Csv;
      } else {
        throw std::invalid_argument("unknown format: " + format);
      }
      const auto start = std::chrono::steady_clock::now();
      const AggregateReport agg = run_trials(cfg);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit(out_path, cfg.format == OutputFormat::Json ? to_json(agg).dump(2) + "\n"
                                                      : to_csv(agg));
      if (!replay_dir.empty()) {
        fs::create_directories(replay_dir);
        for (const TrialRecord& t : agg.records) {
          const fs::path file =
              fs::path(replay_dir) / ("trial_" + std::to_string(t.index) + ".json");
          std::ofstream(file) << make_replay(t.report).dump() << '\n';
        }
      }
      std::cerr << agg.successes << "/" << agg.trials << " trials succeeded in " << secs
                << " s\n";
      return 0;
    }
    if (*replay) {
      const ReplayCheck check = check_replay(read_json(replay_path));
      std::cout << "log_matches=" << check.log_matches
                << " report_matches=" << check.report_matches
                << " certificate_verifies=" << check.certificate_verifies << " ("
                << check.message << ")\n";
      return check.ok() ? 0 : 1;
    }
    if (*verify) {
      std::string why = "ok";
      const bool ok = verify_replay_offline(read_json(verify_path), &why);
      std::cout << (ok ? "verified" : "FAILED: " + why) << '\n';
      return ok ? 0 : 1;
    }
    if (*core) {
      std::ifstream in(edges_path);
      if (!in) throw std::runtime_error("cannot open " + edges_path);
      const Graph g = read_edge_list(in);
      const CorePartition p = strong_core(g, core_k);
      std::cout << "n=" << g.num_vertices() << " m=" << g.num_edges()
                << " black=" << p.black.size() << " blue=" << p.blue.size()
                << " red=" << p.red.size() << '\n';
      if (!dot_path.empty()) {
        std::ofstream dot(dot_path);
        write_dot(dot, g);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
