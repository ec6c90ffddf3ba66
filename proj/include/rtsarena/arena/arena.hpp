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

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtsarena/agent/agent.hpp"
#include "rtsarena/metrics/metrics.hpp"
#include "rtsarena/sim/types.hpp"

namespace rtsarena::arena {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitConfig = 2,
  kExitBackend = 3,
  kExitSimulation = 4,
  kExitDatasetEmpty = 5,
};

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replay parse failures and digest mismatches.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { kMatch, kTournament, kMetrics, kDataset, kReplayVerify };
std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

struct BackendSpec {
  std::string type = "scripted";  // scripted | canned | http
  double flaw_rate = 0.0;         // scripted
  std::string path;               // canned: JSONL of prompt_hash/text
  std::string endpoint;           // http
  std::string model;              // http
  int timeout_seconds = 120;      // http
};

struct AgentSpec {
  std::string name;
  std::string kind = "builtin";  // starevolve | naive | scripted | builtin
  sim::Faction faction = sim::Faction::F3;
  int level = 1;          // builtin
  double flaw_rate = 0.0;  // scripted agent
  BackendSpec backend;    // starevolve / naive
};

struct RunConfig {
  Mode mode = Mode::kMatch;
  std::vector<AgentSpec> agents;
  sim::MatchConfig match;
  int repetitions = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  int jobs = 1;
  agent::ChatParams generation;
  int retry_attempts = 3;
  int retry_backoff_ms = 500;
  std::vector<std::filesystem::path> inputs;

  // Throws sim::ConfigError.
  void validate() const;
};

nlohmann::json to_json(const sim::MatchConfig& c);
sim::MatchConfig match_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AgentSpec& a);

// Throws sim::ConfigError naming the offending field.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& file);

// Action JSON read without ability checks, so recorded invalid names replay.
sim::ActionRequest action_from_json(const nlohmann::json& j);

// Writes every completed call as a canned-response line.
class RecordingBackend : public agent::Backend {
 public:
  RecordingBackend(agent::Backend& inner, const std::filesystem::path& file);
  agent::ChatResult complete(const std::string& prompt, const agent::ChatParams& params) override;

 private:
  agent::Backend& inner_;
  std::mutex mu_;
  std::ofstream out_;
};

// Agent plus whatever backend it owns.
struct AgentInstance {
  std::unique_ptr<agent::Backend> backend;
  std::unique_ptr<agent::Agent> agent;
};

// Throws BackendError when a backend cannot be constructed.
AgentInstance make_agent(const AgentSpec& spec, const RunConfig& cfg,
                         agent::Backend* override_backend = nullptr);

struct MatchSetup {
  std::string match_id;
  sim::MatchConfig config;  // factions and seed already set
  std::array<AgentSpec, 2> seats;
};

// Runs one match, writing the trajectory to `trajectory` as it goes.
// An agent that throws forfeits; its record is flagged as crashed.
metrics::MatchRecord run_match(const MatchSetup& setup, const RunConfig& cfg,
                               std::ostream& trajectory,
                               std::array<agent::Backend*, 2> backends = {nullptr, nullptr});

// Every game of a round-robin: pairings x mirror factions x repetitions.
std::vector<MatchSetup> tournament_schedule(const RunConfig& cfg);

struct TournamentResult {
  std::vector<metrics::MatchRecord> records;  // schedule order
  metrics::EloTable elo;
};

// Writes out/matches/<id>.jsonl, out/leaderboard.{csv,json} and out/metrics.csv.
TournamentResult run_tournament(const RunConfig& cfg, std::ostream& log);

struct ReplayReport {
  bool ok = true;
  int ticks = 0;
  std::optional<int> divergent_tick;
  std::string message;
};

// Re-simulates a trajectory and compares per-tick digests. Throws
// SimulationError naming the line for malformed files.
ReplayReport replay_verify(const std::filesystem::path& file);

// Match records from trajectory files or directories of them.
std::vector<metrics::MatchRecord> load_records(const std::vector<std::filesystem::path>& inputs);

}  // namespace rtsarena::arena
