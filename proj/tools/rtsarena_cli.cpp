// Copyright 2026 The rtsarena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rtsarena: matches, tournaments, metric reports, dataset export and replay
// verification. Exit codes are listed in README.md.

#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "rtsarena/arena/arena.hpp"
#include "rtsarena/dataset/dataset.hpp"

namespace {

using namespace rtsarena;
using arena::ExitCode;

int run_match_mode(const arena::RunConfig& cfg) {
  arena::MatchSetup setup;
  setup.match_id = "match";
  setup.seats = {cfg.agents[0], cfg.agents[1]};
  setup.config = cfg.match;
  setup.config.seed = cfg.seed;
  for (int i = 0; i < 2; ++i) {
    setup.config.factions[i] = cfg.agents[i].faction;
    if (cfg.agents[i].kind == "builtin") setup.config.builtin_difficulty[i] = cfg.agents[i].level;
  }
  std::filesystem::create_directories(cfg.out);
  std::ofstream trajectory(cfg.out / "match.jsonl", std::ios::binary | std::ios::trunc);
  const auto record = arena::run_match(setup, cfg, trajectory);
  std::ofstream(cfg.out / "record.json", std::ios::binary) << metrics::to_json(record).dump(2) << "\n";
  if (record.winner) {
    std::cout << record.players[record.winner - 1].agent << " wins";
  } else {
    std::cout << "tie";
  }
  std::cout << " after " << record.duration_game_seconds() << " game seconds\n";
  for (const auto& p : record.players) {
    if (p.crashed) std::cout << p.agent << " crashed and forfeited\n";
    if (p.degraded) std::cout << p.agent << " ran degraded after backend failures\n";
  }
  return arena::kExitOk;
}

int run_tournament_mode(const arena::RunConfig& cfg) {
  const auto result = arena::run_tournament(cfg, std::cerr);
  std::cout << metrics::leaderboard_csv(result.elo);
  std::vector<metrics::MetricsSummary> rows;
  for (const auto& a : cfg.agents) rows.push_back(metrics::compute_metrics(result.records, a.name));
  std::cout << "\n" << metrics::metrics_table(rows);
  return arena::kExitOk;
}

int run_metrics_mode(const arena::RunConfig& cfg) {
  const auto records = arena::load_records(cfg.inputs);
  std::vector<std::string> names;
  if (!cfg.agents.empty()) {
    for (const auto& a : cfg.agents) names.push_back(a.name);
  } else {
    std::set<std::string> seen;
    for (const auto& r : records) {
      for (const auto& p : r.players) seen.insert(p.agent);
    }
    names.assign(seen.begin(), seen.end());
  }
  std::vector<metrics::MetricsSummary> rows;
  nlohmann::json all = nlohmann::json::array();
  for (const auto& n : names) {
    rows.push_back(metrics::compute_metrics(records, n));
    all.push_back(metrics::to_json(rows.back()));
  }
  std::filesystem::create_directories(cfg.out);
  std::ofstream(cfg.out / "metrics.csv", std::ios::binary) << metrics::metrics_csv(rows);
  std::ofstream(cfg.out / "metrics.json", std::ios::binary) << all.dump(2) << "\n";
  std::cout << metrics::metrics_table(rows);
  return arena::kExitOk;
}

int run_dataset_mode(const arena::RunConfig& cfg) {
  const auto manifest = dataset::export_dataset(cfg.inputs.front(), cfg.out);
  std::cout << dataset::manifest_table(manifest);
  for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
  return manifest.winning == 0 ? arena::kExitDatasetEmpty : arena::kExitOk;
}

int run_replay_mode(const arena::RunConfig& cfg) {
  int code = arena::kExitOk;
  for (const auto& f : cfg.inputs) {
    const auto report = arena::replay_verify(f);
    if (report.ok) {
      std::cout << "ok " << f.string() << " (" << report.ticks << " ticks)\n";
    } else {
      std::cout << "DIVERGED " << f.string();
      if (report.divergent_tick) std::cout << " at tick " << *report.divergent_tick;
      std::cout << ": " << report.message << "\n";
      code = arena::kExitSimulation;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text-driven RTS arena for language-model agents"};
  std::string config_file, mode, out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::vector<std::string> inputs;
  app.add_option("--config", config_file, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "match | tournament | metrics | dataset | replay-verify");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out, "Output directory");
  app.add_option("--jobs", jobs, "Concurrent games in tournament mode");
  app.add_option("inputs", inputs, "Trajectory files or directories (metrics, dataset, replay-verify)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? arena::kExitOk : arena::kExitConfig;
  }

  try {
    arena::RunConfig cfg;
    if (!config_file.empty()) cfg = arena::load_config(config_file);
    if (!mode.empty()) {
      const auto m = arena::parse_mode(mode);
      if (!m) throw sim::ConfigError("unknown mode " + mode);
      cfg.mode = *m;
    }
    if (seed) cfg.seed = *seed;
    if (!out.empty()) cfg.out = out;
    if (jobs) cfg.jobs = *jobs;
    if (!inputs.empty()) cfg.inputs.assign(inputs.begin(), inputs.end());
    cfg.validate();

    switch (cfg.mode) {
      case arena::Mode::kMatch:
        return run_match_mode(cfg);
      case arena::Mode::kTournament:
        return run_tournament_mode(cfg);
      case arena::Mode::kMetrics:
        return run_metrics_mode(cfg);
      case arena::Mode::kDataset:
        return run_dataset_mode(cfg);
      case arena::Mode::kReplayVerify:
        return run_replay_mode(cfg);
    }
  } catch (const sim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return arena::kExitConfig;
  } catch (const arena::BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return arena::kExitBackend;
  } catch (const arena::SimulationError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return arena::kExitSimulation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return arena::kExitUnexpected;
  }
  return arena::kExitUnexpected;
}
