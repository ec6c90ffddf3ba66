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

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rtsarena/agent/pipeline.hpp"
#include "rtsarena/sim/types.hpp"

namespace rtsarena::dataset {

inline constexpr int kHorizon = 20;
inline constexpr double kGamma = 0.95;
inline constexpr double kThreshold = 0.1;
inline constexpr double kIntervalSeconds = 30.0;

// Converted mineral and vespene value of live own units and structures, and
// army and worker counts.
struct MetricVector {
  double minerals = 0;
  double vespene = 0;
  double army = 0;
  double workers = 0;

  std::array<double, 4> values() const { return {minerals, vespene, army, workers}; }
  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

MetricVector metric_values(const sim::GameState& state, sim::PlayerId player);

using MetricRow = std::array<double, 4>;

// Per-metric z-score over the whole stream (population std); constant
// metrics become zeros.
std::vector<MetricRow> normalize_metrics(const std::vector<MetricVector>& stream);

// Discounted gain over `horizon` later steps; nullopt when the stream ends
// before t + horizon.
std::optional<double> score_action(const std::vector<MetricRow>& normalized, std::size_t t,
                                   int horizon = kHorizon, double gamma = kGamma);

// Z-scores within consecutive half-open windows [w*k, w*(k+1)) of game time.
std::vector<double> standardize_scores(const std::vector<double>& scores,
                                       const std::vector<double>& seconds,
                                       double window = kIntervalSeconds);

// Chain elements as stored in a trajectory.
struct PlanStep {
  std::string prompt;
  std::string raw;
  std::vector<std::string> commands;
  bool extracted = false;
  bool accepted = false;
  std::vector<std::string> errors;
  int error_number = 0;
  std::string feedback;
};

struct ExecStep {
  std::string prompt;
  std::string raw;
  bool accepted = false;
};

struct TraceView {
  int tick = 0;
  std::string observation;
  std::vector<PlanStep> planner;
  std::vector<ExecStep> executor;
};

TraceView view_of(const agent::DecisionTrace& trace);
// Reads the JSON written by agent::to_json(DecisionTrace).
TraceView view_from_json(const nlohmann::json& j);

struct DecisionPoint {
  int tick = 0;
  MetricVector metrics;
  std::optional<TraceView> trace;
};

struct PlayerTrajectory {
  std::string match_id;
  std::string faction;
  bool won = false;
  int ticks_per_game_second = 16;
  std::vector<DecisionPoint> points;
};

struct ScoredPoint {
  std::size_t index = 0;
  double raw = 0;
  double z = 0;
};

// Scores every point with a full horizon and standardizes them.
std::vector<ScoredPoint> score_trajectory(const PlayerTrajectory& trajectory);

// Indices of points with z > threshold; empty for a lost match.
std::vector<ScoredPoint> select_samples(const PlayerTrajectory& trajectory,
                                        double threshold = kThreshold);

enum class SampleKind { kPlanner, kExecutor, kVerifier };
std::string_view sample_kind_name(SampleKind k);

struct Sample {
  SampleKind kind = SampleKind::kPlanner;
  std::string prompt;
  std::string target;
  std::string match_id;
  std::string faction;
  int t = 0;  // tick of the decision
  double z_score = 0;
};

nlohmann::json to_json(const Sample& s);

struct SampleMeta {
  std::string match_id;
  std::string faction;
  int tick = 0;
  double z_score = 0;
};

// Planner and executor targets from accepted final chain elements only.
std::vector<Sample> build_decision_samples(const TraceView& trace, const SampleMeta& meta);
// One (rejected, feedback) -> (accepted, feedback) record when the final
// planner element was accepted right after a rejection.
std::optional<Sample> build_verifier_sample(const TraceView& trace, const SampleMeta& meta);

struct Manifest {
  std::map<std::string, std::map<std::string, int>> counts;  // race -> kind -> n
  std::map<std::string, int> victories;                       // race -> winning trajectories
  int trajectories = 0;
  int winning = 0;
  int samples = 0;
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const Manifest& m);
// Race | Victory Traces | Planner | Verifier | Executor | Total, plus a total row.
std::string manifest_table(const Manifest& m);

// Player trajectories from one trajectory file. Throws std::runtime_error
// naming the line on malformed input.
std::vector<PlayerTrajectory> read_trajectories(const std::filesystem::path& file);

// Every *.jsonl trajectory in `matches_dir` (sorted by name) into
// out_dir/dataset.jsonl and out_dir/manifest.json.
Manifest export_dataset(const std::filesystem::path& matches_dir,
                        const std::filesystem::path& out_dir);

}  // namespace rtsarena::dataset
