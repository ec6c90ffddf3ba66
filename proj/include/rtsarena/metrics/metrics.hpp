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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rtsarena::metrics {

// Per-player series and decision statistics of one finished match.
struct PlayerRecord {
  std::string agent;
  std::string faction;             // race name
  std::vector<int> minerals_spent; // per tick
  std::vector<int> vespene_spent;  // per tick
  std::vector<bool> supply_capped; // per tick
  std::vector<int> decision_tokens;  // output tokens per decision
  std::vector<bool> decision_valid;  // per decision
  bool degraded = false;             // backend failed at least once
  bool crashed = false;              // agent threw; the game was forfeited
};

struct MatchRecord {
  std::string match_id;
  int winner = 0;  // 0 tie, else player number
  int ticks = 0;
  int ticks_per_game_second = 16;
  std::uint64_t seed = 0;
  std::array<PlayerRecord, 2> players;

  double duration_game_seconds() const {
    return static_cast<double>(ticks) / ticks_per_game_second;
  }
  // 1 or 2 when `agent` played; 0 otherwise (first seat wins a self-match).
  int seat_of(const std::string& agent) const;
};

nlohmann::json to_json(const MatchRecord& r);
// Throws std::invalid_argument on a malformed document.
MatchRecord record_from_json(const nlohmann::json& j);

// ---- Elo -------------------------------------------------------------------

inline constexpr double kEloK = 32.0;
inline constexpr double kEloInitial = 1000.0;

double expected_score(double ra, double rb);

enum class GameResult { kAWins, kBWins, kTie };

struct EloTable {
  double k = kEloK;
  double initial = kEloInitial;
  std::map<std::string, double> ratings;

  double rating(const std::string& agent) const;
  double sum() const;
  // Descending by rating, then by name.
  std::vector<std::pair<std::string, double>> ranking() const;
};

// Throws std::invalid_argument when a == b.
void update_elo(EloTable& table, const std::string& a, const std::string& b, GameResult result);

// Shuffles the records with `seed`, then applies them in that order.
EloTable run_rating_pass(const std::vector<MatchRecord>& records, std::uint64_t seed);

// ---- Metrics ---------------------------------------------------------------

struct Ratio {
  long long num = 0;
  long long den = 0;
  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / den; }
  double percent() const { return 100.0 * value(); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// A pooled value over all records plus mean and population standard
// deviation of the same quantity over faction groups.
struct Metric {
  double value = 0;
  double mean = 0;
  double stddev = 0;
};

struct MetricsSummary {
  std::string agent;
  int matches = 0;
  int wins = 0;
  Ratio win;           // wins / matches
  Ratio capped;        // capped ticks / ticks
  Ratio valid;         // valid decisions / decisions
  long long spent = 0; // minerals + vespene
  long long ticks = 0;
  long long tokens = 0;
  long long decisions = 0;

  Metric wr;                  // %
  std::optional<Metric> tcw;  // seconds, wins only
  Metric sbr;                 // %
  Metric rur;                 // resources per tick
  std::optional<Metric> tpd;  // absent without decisions
  std::optional<Metric> var;  // %, absent without decisions
};

// Records in which `agent` did not play are ignored. Throws
// std::invalid_argument when none remain.
MetricsSummary compute_metrics(const std::vector<MatchRecord>& records, const std::string& agent);

nlohmann::json to_json(const MetricsSummary& s);
std::string metrics_csv(const std::vector<MetricsSummary>& rows);
// Fixed-width table with "55.00 ± 10.00" cells.
std::string metrics_table(const std::vector<MetricsSummary>& rows);
std::string format_cell(const std::optional<Metric>& m, int decimals);

std::string leaderboard_csv(const EloTable& table);
nlohmann::json leaderboard_json(const EloTable& table);

}  // namespace rtsarena::metrics
