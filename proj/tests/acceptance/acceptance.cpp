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

// Acceptance checks. Prints one PASS/FAIL line per criterion; exits 1 when any
// criterion fails. Arguments select criteria by number (default: all).

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "reference_view.hpp"
#include "faults.hpp"
#include "json.hpp"
#include "records.hpp"
#include "rtsarena/agent/pipeline.hpp"
#include "rtsarena/agent/scripted_model.hpp"
#include "rtsarena/arena/arena.hpp"
#include "rtsarena/common/digest.hpp"
#include "rtsarena/common/rng.hpp"
#include "rtsarena/dataset/dataset.hpp"
#include "rtsarena/metrics/metrics.hpp"
#include "rtsarena/obs/observation.hpp"
#include "rtsarena/protocol/actions.hpp"
#include "rtsarena/sim/kernel.hpp"
#include "scoring.hpp"
#include "states.hpp"

namespace {

using namespace rtsarena;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

arena::AgentSpec builtin(int level) {
  arena::AgentSpec s;
  s.kind = "builtin";
  s.level = level;
  s.name = "builtin-L" + std::to_string(level);
  return s;
}

arena::MatchSetup setup(const arena::AgentSpec& a, const arena::AgentSpec& b, sim::Faction f,
                        std::uint64_t seed, const std::string& id) {
  arena::MatchSetup s;
  s.match_id = id;
  s.seats = {a, b};
  s.config.factions = {f, f};
  s.config.seed = seed;
  return s;
}

std::vector<json> lines_of(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

// ---------------------------------------------------------------------------

Verdict determinism() {
  const auto t0 = Clock::now();
  arena::RunConfig cfg;
  arena::AgentSpec scripted;
  scripted.kind = "scripted";
  scripted.name = "scripted";
  int same = 0, wins = 0;
  std::string first_bad;
  for (int i = 0; i < 20; ++i) {
    const auto s = setup(scripted, builtin(1 + i % 7), sim::kAllFactions[i % 3], derive_seed(2026, i),
                         "det" + std::to_string(i));
    std::ostringstream a, b;
    const auto ra = arena::run_match(s, cfg, a);
    arena::run_match(s, cfg, b);
    if (hash_hex(a.str()) == hash_hex(b.str())) {
      ++same;
    } else if (first_bad.empty()) {
      first_bad = s.match_id;
    }
    wins += ra.winner == 1;
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = same == 20 && secs < 60;
  v.detail = std::to_string(same) + "/20 matches reproduce byte-identical trajectories; " +
             fmt(secs, 3) + " s for 40 runs (limit 60 s); scripted won " + std::to_string(wins);
  if (!first_bad.empty()) v.detail += "; first mismatch " + first_bad;
  return v;
}

Verdict elo_suite() {
  metrics::EloTable t;
  std::mt19937_64 rng(1);
  const std::vector<std::string> names = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (const auto& n : names) t.ratings[n] = 1000;
  double drift = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = rng() % names.size();
    auto b = rng() % (names.size() - 1);
    if (b >= a) ++b;
    metrics::update_elo(t, names[a], names[b], static_cast<metrics::GameResult>(rng() % 3));
    drift = std::max(drift, std::abs(t.sum() - 8000.0));
  }
  const long double oracle = 1.0L / (1.0L + std::pow(10.0L, 0.5L));
  const double e = metrics::expected_score(1000, 1200);

  std::vector<metrics::MatchRecord> records;
  for (int i = 0; i < 20; ++i) {
    const bool strong = i % 4 != 3;
    records.push_back(i % 2 ? fixtures::game("strong", "weak", strong ? 1 : 2)
                            : fixtures::game("weak", "strong", strong ? 2 : 1));
  }
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = metrics::run_rating_pass(records, seed);
    agree += r.rating("strong") > r.rating("weak");
  }
  Verdict v;
  v.pass = drift <= 1e-9 && std::abs(e - 0.240253) <= 1e-6 &&
           std::abs(static_cast<long double>(e) - oracle) <= 1e-15L && agree >= 95;
  v.detail = "max sum drift " + fmt(drift, 3) + " over 10000 updates; E(1000,1200) = " + fmt(e, 10) +
             " (oracle " + fmt(static_cast<double>(oracle), 10) + "); 15/20 agent ranked first in " +
             std::to_string(agree) + "/100 shuffles";
  return v;
}

Verdict scoring_oracle() {
  std::mt19937_64 rng(23);
  const char* kinds[] = {"Probe", "Zealot", "Stalker", "Pylon", "Gateway", "Sentry", "Nexus"};
  double worst = 0;
  std::size_t compared = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto s = fixtures::protoss_base(100);
    dataset::PlayerTrajectory traj;
    std::vector<std::array<double, 4>> raw;
    const int n = 25 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      for (int a = static_cast<int>(rng() % 4); a > 0; --a) {
        fixtures::place(s, kinds[rng() % 7], 1 + static_cast<int>(rng() % 2),
                        {static_cast<int>(rng() % 60), static_cast<int>(rng() % 60)});
      }
      if (s.units.size() > 4 && rng() % 3 == 0) s.units.erase(std::prev(s.units.end()));
      std::array<double, 4> r{};
      for (const auto& [id, u] : s.units) {
        if (u.owner != 1) continue;
        const auto& k = sim::Catalog::get().kind(u.kind);
        r[0] += k.minerals;
        r[1] += k.vespene;
        r[2] += k.cls == sim::UnitClass::kArmy;
        r[3] += k.cls == sim::UnitClass::kWorker;
      }
      raw.push_back(r);
      traj.points.push_back({i * 24, dataset::metric_values(s, 1), std::nullopt});
    }
    const auto want = fixtures::oracle_scores(raw);
    const auto got = dataset::score_trajectory(traj);
    if (got.size() != want.size()) return {false, "trajectory " + std::to_string(trial) + " length differs"};
    for (std::size_t i = 0; i < got.size(); ++i) {
      worst = std::max(worst, std::abs(got[i].raw - want[i]) / std::max(1.0, std::abs(want[i])));
      ++compared;
    }
  }
  std::vector<dataset::MetricRow> rows(21, dataset::MetricRow{1, 0, 0, 0});
  rows[0] = dataset::MetricRow{0, 0, 0, 0};
  const double geo = *dataset::score_action(rows, 0);
  double direct = 0;
  for (int k = 1; k <= 20; ++k) direct += std::pow(0.95, k);
  const double closed = 0.95 * (1 - std::pow(0.95, 20)) / 0.05;
  const double g20 = std::pow(0.95, 20);
  Verdict v;
  v.pass = worst <= 1e-9 && std::abs(geo - closed) <= 1e-12 && std::abs(geo - direct) <= 1e-12 &&
           g20 >= 0.355 && g20 <= 0.360;
  v.detail = std::to_string(compared) + " scores from 50 trajectories, max relative error " + fmt(worst, 3) +
             "; geometric case " + fmt(geo, 9) + " = closed form " + fmt(closed, 9) +
             " (the quoted 12.1925 is off by " + fmt(12.1925 - closed, 2) + "); 0.95^20 = " + fmt(g20, 5);
  return v;
}

Verdict fault_injection() {
  std::mt19937_64 rng(41);
  std::map<fixtures::FaultKind, int> per_kind, caught;
  int injected = 0, rejected = 0, accepted_batches = 0, drops = 0;
  std::string first_miss;
  for (std::uint64_t seed = 1; injected < 500; ++seed) {
    const auto base = fixtures::base_state(seed);
    if (!protocol::validate_actions(base.state, 1, base.batch).accepted()) continue;
    for (auto kind : fixtures::kAllFaultKinds) {
      if (injected == 500) break;
      const auto fc = fixtures::inject(base, kind, rng);
      const auto c = protocol::check_executor_output(fc.state, 1, fc.text);
      ++injected;
      ++per_kind[kind];
      if (!c.report.accepted()) {
        ++rejected;
        ++caught[kind];
      } else if (first_miss.empty()) {
        first_miss = fixtures::fault_kind_name(kind);
      }
    }
    auto rich = base.state;
    rich.player(1).minerals += 800;
    rich.player(1).vespene += 400;
    std::vector<sim::ActionBatch> candidates = {base.batch};
    for (int i = 0; i < 20; ++i) candidates.push_back(fixtures::random_batch(rich, rng));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      auto s = i == 0 ? base.state : rich;
      if (!protocol::validate_actions(s, 1, candidates[i]).accepted()) continue;
      ++accepted_batches;
      const auto res = sim::step(s, {candidates[i], {}});
      drops += static_cast<int>(candidates[i].size() - res.executed[0].size());
    }
  }
  std::string kinds;
  for (auto k : fixtures::kAllFaultKinds) {
    kinds += std::string(kinds.empty() ? "" : ", ") + fixtures::fault_kind_name(k) + " " +
             std::to_string(caught[k]) + "/" + std::to_string(per_kind[k]);
  }
  Verdict v;
  v.pass = injected == 500 && rejected == 500 && drops == 0 && accepted_batches > 0;
  v.detail = std::to_string(rejected) + "/500 faulted batches rejected (" + kinds + "); " +
             std::to_string(accepted_batches) + " accepted batches executed with " + std::to_string(drops) +
             " defensive drops";
  if (!first_miss.empty()) v.detail += "; first miss: " + first_miss;
  return v;
}

struct Placed {
  sim::UnitId id;
  obs::Point pos;
};

Verdict observation_goldens() {
  const auto text = obs::render_view(fixtures::reference_view(), fixtures::reference_history()).full_text;
  std::ifstream in(std::string(RTSARENA_SOURCE_DIR) + "/tests/golden/reference_observation.txt", std::ios::binary);
  std::stringstream golden;
  golden << in.rdbuf();
  const bool identical = text + "\n" == golden.str();
  const bool markers = text.find("Time: 04:18") != std::string::npos &&
                       text.find("# Visible enemy units\n[Empty]") != std::string::npos &&
                       text.find("] Probe\nState: collecting resources automatically") != std::string::npos;

  std::mt19937_64 rng(5);
  int shuffles = 0, broken = 0;
  for (int set = 0; set < 50; ++set) {
    std::vector<Placed> v;
    const int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      v.push_back({static_cast<sim::UnitId>(1 + rng() % 500),
                   {static_cast<double>(rng() % 40), static_cast<double>(rng() % 40)}});
    }
    auto ids = [](const std::vector<Placed>& p) {
      std::vector<sim::UnitId> out;
      for (const auto& x : p) out.push_back(x.id);
      return out;
    };
    const auto want = ids(obs::order_units(v, {20, 20}));
    for (int k = 0; k < 1000; ++k) {
      std::shuffle(v.begin(), v.end(), rng);
      ++shuffles;
      broken += ids(obs::order_units(v, {20, 20})) != want;
    }
  }
  Verdict v;
  v.pass = identical && markers && broken == 0;
  v.detail = std::string("reference state ") + (identical ? "matches" : "DIFFERS FROM") +
             " the golden byte for byte" + (markers ? "" : ", expected markers missing") + "; " +
             std::to_string(shuffles - broken) + "/" + std::to_string(shuffles) +
             " shuffles over 50 unit sets keep the order";
  return v;
}

std::vector<int> fire_ticks(int minerals, int until) {
  std::vector<int> fired;
  int next = 0;
  for (int t = 0; t <= until; ++t) {
    const auto d = agent::should_decide(t, minerals, next);
    next = d.next_forced_tick;
    if (d.fire) fired.push_back(t);
  }
  return fired;
}

Verdict pipeline_closure() {
  const auto dir = std::filesystem::temp_directory_path() / "rtsarena_acceptance_canned";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto canned = dir / "responses.jsonl";

  arena::AgentSpec se;
  se.kind = "starevolve";
  se.name = "starevolve";
  arena::RunConfig cfg;
  cfg.retry_backoff_ms = 0;
  const auto s = setup(se, builtin(3), sim::Faction::F3, 31, "closure");
  std::ostringstream live;
  {
    agent::MockBackend model{agent::ScriptedModel(0.2)};
    arena::RecordingBackend recorder(model, canned);
    arena::run_match(s, cfg, live, {&recorder, nullptr});
  }

  auto offline = s;
  offline.seats[0].backend.type = "canned";
  offline.seats[0].backend.path = canned.string();
  std::ostringstream replay;
  const auto rec = arena::run_match(offline, cfg, replay);
  const auto lines = lines_of(replay.str());
  const auto live_lines = lines_of(live.str());

  std::size_t longest = 0, decisions = 0;
  int last = -1, max_gap = 0;
  bool aligned = true;
  for (const auto& l : lines) {
    if (l["type"] != "decision") continue;
    ++decisions;
    longest = std::max({longest, l["trace"]["planner_chain"].size(), l["trace"]["executor_chain"].size()});
    const int t = l["tick"].get<int>();
    aligned = aligned && t % 10 == 0;
    if (last >= 0) max_gap = std::max(max_gap, t - last);
    last = t;
  }
  bool same = lines.size() == live_lines.size();
  for (std::size_t i = 1; same && i < lines.size(); ++i) same = lines[i] == live_lines[i];

  const auto& p = rec.players[0];
  const double var =
      p.decision_valid.empty()
          ? 0
          : static_cast<double>(std::count(p.decision_valid.begin(), p.decision_valid.end(), true)) /
                static_cast<double>(p.decision_valid.size());
  const auto quiet = fire_ticks(0, 350);
  const auto rich = fire_ticks(500, 100);
  bool cadence = quiet == std::vector<int>{0, 100, 200, 300} && rich.size() == 11;
  for (std::size_t i = 0; cadence && i < rich.size(); ++i) cadence = rich[i] == static_cast<int>(i) * 10;
  cadence = cadence && !agent::should_decide(10, 170, 100).fire && agent::should_decide(10, 171, 100).fire &&
            !agent::should_decide(15, 500, 100).fire;

  Verdict v;
  v.pass = lines.back()["type"] == "result" && !p.degraded && var >= 0.9 && longest <= 3 && decisions > 0 &&
           cadence && aligned && max_gap <= 100 && same;
  v.detail = "offline canned match ended at tick " + std::to_string(rec.ticks) + " (" +
             (rec.winner == 1 ? "StarEvolve won" : rec.winner == 2 ? "builtin-L3 won" : "tie") + "); VAR " +
             fmt(100 * var, 4) + "% over " + std::to_string(decisions) + " decisions; longest chain " +
             std::to_string(longest) + "; " + (p.degraded ? "backend misses" : "no backend misses") + "; " +
             (same ? "identical to the live run" : "DIFFERS from the live run") + "; schedule " +
             (cadence ? "0/100/200/300 and every 10 ticks when rich" : "WRONG") + ", max gap " +
             std::to_string(max_gap) + " ticks";
  std::filesystem::remove_all(dir);
  return v;
}

Verdict metric_formulas() {
  const auto s = metrics::compute_metrics(fixtures::five(), "A");
  const bool exact = s.matches == 5 && s.win == metrics::Ratio{2, 5} && s.capped == metrics::Ratio{176, 1440} &&
                     s.valid == metrics::Ratio{5, 7};
  const bool close = s.tcw && std::abs(s.tcw->value - 20.0) <= 1e-9 &&
                     std::abs(s.rur.value - 1225.0 / 1440) <= 1e-9 && s.tpd &&
                     std::abs(s.tpd->value - 180.0) <= 1e-9 && s.var &&
                     std::abs(s.var->value - 500.0 / 7) <= 1e-9 && std::abs(s.wr.value - 40.0) <= 1e-12 &&
                     std::abs(s.sbr.value - 100.0 * 176 / 1440) <= 1e-9;
  std::vector<metrics::MatchRecord> rs;
  for (int i = 0; i < 20; ++i) rs.push_back(fixtures::game("A", "B", i < 11 ? 1 : 2));
  const auto cell = metrics::format_cell(metrics::compute_metrics(rs, "A").wr, 2);
  Verdict v;
  v.pass = exact && close && cell == "55.00 ± 0.00";
  v.detail = std::string("five-match set ") + (exact ? "exact" : "WRONG") + " for WR 2/5, SBR 176/1440, VAR 5/7; " +
             (close ? "TCW 20, RUR 1225/1440, TPD 180 within 1e-9" : "real-valued metrics off") +
             "; 11 of 20 renders as \"" + cell + "\"";
  return v;
}

json trace_json(int tick) {
  return {{"tick", tick},
          {"observation", "obs " + std::to_string(tick)},
          {"planner_chain",
           {{{"prompt", "plan"}, {"raw", "rejected " + std::to_string(tick)}, {"commands", {"x"}},
             {"extracted", true}, {"errors", {"e"}}, {"error_number", 1}, {"accepted", false}},
            {{"prompt", "plan"}, {"raw", "accepted " + std::to_string(tick)}, {"commands", {"y"}},
             {"extracted", true}, {"errors", json::array()}, {"error_number", 0}, {"accepted", true}}}},
          {"executor_chain", {{{"prompt", "exec"}, {"raw", "[]"}, {"accepted", true}}}}};
}

void write_trajectory(const std::filesystem::path& file, sim::Faction f, int winner,
                      const dataset::PlayerTrajectory& t) {
  std::ofstream out(file, std::ios::binary);
  const auto id = std::string(sim::faction_id(f));
  out << json{{"type", "header"},
              {"match_id", file.stem().string()},
              {"config", {{"ticks_per_game_second", 16}}},
              {"agents", {{{"name", "a"}, {"faction", id}}, {{"name", "b"}, {"faction", id}}}}}
             .dump()
      << "\n";
  for (const auto& p : t.points) {
    const auto& m = p.metrics;
    out << json{{"type", "decision"},
                {"player", 1},
                {"tick", p.tick},
                {"metrics", {{"minerals", m.minerals}, {"vespene", m.vespene}, {"army", m.army}, {"workers", m.workers}}},
                {"trace", trace_json(p.tick)}}
               .dump()
        << "\n";
  }
  out << json{{"type", "result"}, {"record", {{"winner", winner}}}}.dump() << "\n";
}

Verdict dataset_construction() {
  std::vector<std::size_t> plants;
  const auto traj = fixtures::planted(8, &plants);
  std::vector<std::size_t> got;
  for (const auto& s : dataset::select_samples(traj)) got.push_back(s.index);
  auto lost = traj;
  lost.won = false;
  const bool losing_empty = dataset::select_samples(lost).empty();

  std::mt19937_64 rng(8);
  int targets = 0, leaks = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    dataset::TraceView t;
    for (int i = 1 + static_cast<int>(rng() % 3); i > 0; --i) {
      dataset::PlanStep p;
      p.prompt = "p";
      p.raw = std::to_string(rng() % 3);
      p.accepted = rng() % 2;
      t.planner.push_back(p);
    }
    for (int i = static_cast<int>(rng() % 4); i > 0; --i) {
      t.executor.push_back({"e", std::to_string(rng() % 3), rng() % 2 == 0});
    }
    auto samples = dataset::build_decision_samples(t, {"m", "Terran", 0, 1});
    for (const auto& s : samples) {
      ++targets;
      if (s.kind == dataset::SampleKind::kPlanner) {
        for (std::size_t i = 0; i + 1 < t.planner.size(); ++i) leaks += t.planner[i].raw == s.target;
      } else {
        for (std::size_t i = 0; i + 1 < t.executor.size(); ++i) leaks += t.executor[i].raw == s.target;
      }
    }
  }

  const auto dir = std::filesystem::temp_directory_path() / "rtsarena_acceptance_dataset";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "in");
  write_trajectory(dir / "in" / "t1.jsonl", sim::Faction::F1, 1, fixtures::planted(4, nullptr));
  write_trajectory(dir / "in" / "t2.jsonl", sim::Faction::F1, 1, fixtures::planted(3, nullptr));
  write_trajectory(dir / "in" / "p1.jsonl", sim::Faction::F3, 1, fixtures::planted(5, nullptr));
  write_trajectory(dir / "in" / "z1.jsonl", sim::Faction::F2, 1, fixtures::planted(6, nullptr));
  write_trajectory(dir / "in" / "z2.jsonl", sim::Faction::F2, 2, fixtures::planted(9, nullptr));
  const auto m = dataset::export_dataset(dir / "in", dir / "out");
  const auto table = dataset::manifest_table(m);
  const std::string want =
      "Race,Victory Traces,Planner Samples,Verifier Samples,Executor Samples,Total\n"
      "Protoss,1,5,5,5,15\n"
      "Terran,2,7,7,7,21\n"
      "Zerg,1,6,6,6,18\n"
      "Total,4,18,18,18,54\n";
  std::filesystem::remove_all(dir);

  Verdict v;
  v.pass = got == plants && losing_empty && leaks == 0 && targets > 0 && table == want;
  v.detail = "selected " + std::to_string(got.size()) + " of " + std::to_string(plants.size()) +
             " planted timesteps" + (got == plants ? " exactly" : " (MISMATCH)") + "; losing trajectory gives " +
             (losing_empty ? "no samples" : "SAMPLES") + "; " + std::to_string(leaks) + " masked outputs among " +
             std::to_string(targets) + " targets; manifest table " + (table == want ? "matches" : "DIFFERS:\n" + table);
  return v;
}

Verdict difficulty_ordering() {
  const auto t0 = Clock::now();
  arena::RunConfig cfg;
  int strong = 0, ties = 0;
  for (int i = 0; i < 50; ++i) {
    const bool flip = i % 2;
    auto s = setup(flip ? builtin(2) : builtin(6), flip ? builtin(6) : builtin(2), sim::kAllFactions[i % 3],
                   derive_seed(6262, i), "diff" + std::to_string(i));
    std::ostream sink(nullptr);
    const auto r = arena::run_match(s, cfg, sink);
    const int l6_seat = flip ? 2 : 1;
    strong += r.winner == l6_seat;
    ties += r.winner == 0;
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = strong >= 40 && secs < 300;
  v.detail = "builtin-L6 won " + std::to_string(strong) + "/50 mirror matches against builtin-L2 (" +
             std::to_string(ties) + " ties; need 40); " + fmt(secs, 3) + " s (limit 300 s)";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"determinism", determinism},
      {"elo suite", elo_suite},
      {"scoring oracle", scoring_oracle},
      {"verifier fault injection", fault_injection},
      {"observation goldens", observation_goldens},
      {"pipeline closure with canned backend", pipeline_closure},
      {"metric formulas", metric_formulas},
      {"dataset construction", dataset_construction},
      {"difficulty ordering", difficulty_ordering},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(number)) continue;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << number << "] " << criteria[i].first << ": " << v.detail
              << " (" << fmt(seconds_since(t0), 3) << " s)" << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
