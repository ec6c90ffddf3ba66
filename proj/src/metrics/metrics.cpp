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

#include "rtsarena/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rtsarena/common/rng.hpp"

namespace rtsarena::metrics {

using nlohmann::json;

int MatchRecord::seat_of(const std::string& agent) const {
  if (players[0].agent == agent) return 1;
  if (players[1].agent == agent) return 2;
  return 0;
}

json to_json(const MatchRecord& r) {
  json players = json::array();
  for (const auto& p : r.players) {
    std::vector<int> capped(p.supply_capped.begin(), p.supply_capped.end());
    std::vector<int> valid(p.decision_valid.begin(), p.decision_valid.end());
    players.push_back({{"agent", p.agent},
                       {"faction", p.faction},
                       {"minerals_spent", p.minerals_spent},
                       {"vespene_spent", p.vespene_spent},
                       {"supply_capped", capped},
                       {"decision_tokens", p.decision_tokens},
                       {"decision_valid", valid},
                       {"degraded", p.degraded},
                       {"crashed", p.crashed}});
  }
  return {{"match_id", r.match_id},
          {"winner", r.winner},
          {"ticks", r.ticks},
          {"ticks_per_game_second", r.ticks_per_game_second},
          {"duration_game_seconds", r.duration_game_seconds()},
          {"seed", r.seed},
          {"players", players}};
}

MatchRecord record_from_json(const json& j) {
  try {
    MatchRecord r;
    r.match_id = j.at("match_id").get<std::string>();
    r.winner = j.at("winner").get<int>();
    r.ticks = j.at("ticks").get<int>();
    r.ticks_per_game_second = j.at("ticks_per_game_second").get<int>();
    r.seed = j.value("seed", std::uint64_t{0});
    const auto& players = j.at("players");
    if (!players.is_array() || players.size() != 2) throw std::invalid_argument("need 2 players");
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& pj = players[i];
      auto& p = r.players[i];
      p.agent = pj.at("agent").get<std::string>();
      p.faction = pj.value("faction", "");
      p.minerals_spent = pj.at("minerals_spent").get<std::vector<int>>();
      p.vespene_spent = pj.at("vespene_spent").get<std::vector<int>>();
      for (int c : pj.at("supply_capped").get<std::vector<int>>()) p.supply_capped.push_back(c != 0);
      p.decision_tokens = pj.at("decision_tokens").get<std::vector<int>>();
      for (int v : pj.at("decision_valid").get<std::vector<int>>()) p.decision_valid.push_back(v != 0);
      p.degraded = pj.value("degraded", false);
      p.crashed = pj.value("crashed", false);
    }
    if (r.winner < 0 || r.winner > 2 || r.ticks < 0 || r.ticks_per_game_second <= 0) {
      throw std::invalid_argument("field out of range");
    }
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad match record: ") + e.what());
  }
}

// ---- Elo -------------------------------------------------------------------

double expected_score(double ra, double rb) { return 1.0 / (1.0 + std::pow(10.0, (rb - ra) / 400.0)); }

double EloTable::rating(const std::string& agent) const {
  auto it = ratings.find(agent);
  return it == ratings.end() ? initial : it->second;
}

double EloTable::sum() const {
  double s = 0;
  for (const auto& [name, r] : ratings) s += r;
  return s;
}

std::vector<std::pair<std::string, double>> EloTable::ranking() const {
  std::vector<std::pair<std::string, double>> out(ratings.begin(), ratings.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

void update_elo(EloTable& table, const std::string& a, const std::string& b, GameResult result) {
  if (a == b) throw std::invalid_argument("an agent cannot be rated against itself");
  auto& ra = table.ratings.try_emplace(a, table.initial).first->second;
  auto& rb = table.ratings.try_emplace(b, table.initial).first->second;
  const double ea = expected_score(ra, rb);
  const double sa = result == GameResult::kAWins ? 1.0 : result == GameResult::kTie ? 0.5 : 0.0;
  const double delta = table.k * (sa - ea);
  ra += delta;
  rb -= delta;
}

EloTable run_rating_pass(const std::vector<MatchRecord>& records, std::uint64_t seed) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  stable_shuffle(order, rng);
  EloTable table;
  for (auto i : order) {
    const auto& r = records[i];
    const auto result = r.winner == 1   ? GameResult::kAWins
                        : r.winner == 2 ? GameResult::kBWins
                                        : GameResult::kTie;
    update_elo(table, r.players[0].agent, r.players[1].agent, result);
  }
  return table;
}

// ---- Metrics ---------------------------------------------------------------

namespace {

struct Totals {
  int matches = 0;
  int wins = 0;
  double win_seconds = 0;
  long long ticks = 0;
  long long capped = 0;
  long long spent = 0;
  long long tokens = 0;
  long long decisions = 0;
  long long valid = 0;

  void add(const MatchRecord& r, int seat) {
    const auto& p = r.players[static_cast<std::size_t>(seat - 1)];
    ++matches;
    if (r.winner == seat) {
      ++wins;
      win_seconds += r.duration_game_seconds();
    }
    ticks += r.ticks;
    capped += std::count(p.supply_capped.begin(), p.supply_capped.end(), true);
    spent += std::accumulate(p.minerals_spent.begin(), p.minerals_spent.end(), 0LL);
    spent += std::accumulate(p.vespene_spent.begin(), p.vespene_spent.end(), 0LL);
    tokens += std::accumulate(p.decision_tokens.begin(), p.decision_tokens.end(), 0LL);
    decisions += static_cast<long long>(p.decision_valid.size());
    valid += std::count(p.decision_valid.begin(), p.decision_valid.end(), true);
  }
  double wr() const { return 100.0 * wins / matches; }
  double sbr() const { return ticks ? 100.0 * static_cast<double>(capped) / ticks : 0.0; }
  double rur() const { return ticks ? static_cast<double>(spent) / ticks : 0.0; }
  double tcw() const { return win_seconds / wins; }
  double tpd() const { return static_cast<double>(tokens) / decisions; }
  double var() const { return 100.0 * static_cast<double>(valid) / decisions; }
};

template <class F>
Metric spread(double pooled, const std::vector<Totals>& groups, F value, bool (*use)(const Totals&)) {
  std::vector<double> xs;
  for (const auto& g : groups) {
    if (use(g)) xs.push_back(value(g));
  }
  Metric m{pooled, 0, 0};
  if (xs.empty()) return m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
  return m;
}

bool any(const Totals& t) { return t.matches > 0; }
bool has_wins(const Totals& t) { return t.wins > 0; }
bool has_decisions(const Totals& t) { return t.decisions > 0; }

}  // namespace

MetricsSummary compute_metrics(const std::vector<MatchRecord>& records, const std::string& agent) {
  Totals all;
  std::map<std::string, Totals> by_faction;
  for (const auto& r : records) {
    const int seat = r.seat_of(agent);
    if (seat == 0) continue;
    all.add(r, seat);
    by_faction[r.players[static_cast<std::size_t>(seat - 1)].faction].add(r, seat);
  }
  if (all.matches == 0) throw std::invalid_argument("no matches for agent " + agent);
  std::vector<Totals> groups;
  for (const auto& [f, t] : by_faction) groups.push_back(t);

  MetricsSummary s;
  s.agent = agent;
  s.matches = all.matches;
  s.wins = all.wins;
  s.win = {all.wins, all.matches};
  s.capped = {all.capped, all.ticks};
  s.valid = {all.valid, all.decisions};
  s.spent = all.spent;
  s.ticks = all.ticks;
  s.tokens = all.tokens;
  s.decisions = all.decisions;
  s.wr = spread(all.wr(), groups, [](const Totals& t) { return t.wr(); }, any);
  s.sbr = spread(all.sbr(), groups, [](const Totals& t) { return t.sbr(); }, any);
  s.rur = spread(all.rur(), groups, [](const Totals& t) { return t.rur(); }, any);
  if (all.wins > 0) s.tcw = spread(all.tcw(), groups, [](const Totals& t) { return t.tcw(); }, has_wins);
  if (all.decisions > 0) {
    s.tpd = spread(all.tpd(), groups, [](const Totals& t) { return t.tpd(); }, has_decisions);
    s.var = spread(all.var(), groups, [](const Totals& t) { return t.var(); }, has_decisions);
  }
  return s;
}

namespace {

json metric_json(const std::optional<Metric>& m) {
  if (!m) return nullptr;
  return {{"value", m->value}, {"mean", m->mean}, {"std", m->stddev}};
}

std::string fixed(double v, int decimals) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << v;
  return out.str();
}

std::string csv_value(const std::optional<Metric>& m, int decimals) {
  return m ? fixed(m->value, decimals) : "";
}

}  // namespace

json to_json(const MetricsSummary& s) {
  return {{"agent", s.agent},
          {"matches", s.matches},
          {"wins", s.wins},
          {"decisions", s.decisions},
          {"WR", metric_json(s.wr)},
          {"TCW", metric_json(s.tcw)},
          {"SBR", metric_json(s.sbr)},
          {"RUR", metric_json(s.rur)},
          {"TPD", metric_json(s.tpd)},
          {"VAR", metric_json(s.var)}};
}

std::string format_cell(const std::optional<Metric>& m, int decimals) {
  if (!m) return "-";
  return fixed(m->value, decimals) + " ± " + fixed(m->stddev, decimals);
}

std::string metrics_csv(const std::vector<MetricsSummary>& rows) {
  std::string out = "agent,matches,wins,WR,TCW,SBR,RUR,TPD,VAR\n";
  for (const auto& s : rows) {
    out += s.agent + "," + std::to_string(s.matches) + "," + std::to_string(s.wins) + "," +
           csv_value(s.wr, 2) + "," + csv_value(s.tcw, 1) + "," + csv_value(s.sbr, 2) + "," +
           csv_value(s.rur, 4) + "," + csv_value(s.tpd, 1) + "," + csv_value(s.var, 2) + "\n";
  }
  return out;
}

std::string metrics_table(const std::vector<MetricsSummary>& rows) {
  const std::vector<std::string> head{"Agent", "Win Rate(%)", "TCW(s)", "SBR(%)",
                                      "RUR",   "TPD",         "VAR(%)"};
  std::vector<std::vector<std::string>> cells{head};
  for (const auto& s : rows) {
    cells.push_back({s.agent, format_cell(s.wr, 2), format_cell(s.tcw, 0), format_cell(s.sbr, 2),
                     format_cell(s.rur, 2), format_cell(s.tpd, 0), format_cell(s.var, 2)});
  }
  std::vector<std::size_t> width(head.size(), 0);
  auto display = [](const std::string& s) {
    // "±" is two bytes in UTF-8 but one column
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  };
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], display(row[i]));
  }
  std::string out;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i] + std::string(width[i] - display(row[i]) + (i + 1 < row.size() ? 2 : 0), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

std::string leaderboard_csv(const EloTable& table) {
  std::string out = "rank,agent,rating\n";
  int rank = 0;
  for (const auto& [name, r] : table.ranking()) {
    out += std::to_string(++rank) + "," + name + "," + fixed(r, 2) + "\n";
  }
  return out;
}

json leaderboard_json(const EloTable& table) {
  json rows = json::array();
  int rank = 0;
  for (const auto& [name, r] : table.ranking()) {
    rows.push_back({{"rank", ++rank}, {"agent", name}, {"rating", r}});
  }
  return {{"k", table.k}, {"initial", table.initial}, {"ranking", rows}};
}

}  // namespace rtsarena::metrics
