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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "reference_view.hpp"
#include "rtsarena/obs/observation.hpp"
#include "states.hpp"

namespace rtsarena::obs {
namespace {

struct P {
  UnitId id;
  Cell pos;
};

std::vector<UnitId> ids(const std::vector<P>& v) {
  std::vector<UnitId> out;
  for (const auto& p : v) out.push_back(p.id);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(OrderUnits, Collinear) {
  std::vector<P> v = {{3, {4, 0}}, {1, {1, 0}}, {2, {2, 0}}};
  EXPECT_EQ(ids(order_units(v, {0, 0})), (std::vector<UnitId>{1, 2, 3}));
}

TEST(OrderUnits, EqualDistanceTieGoesToLowestId) {
  std::vector<P> v = {{3, {6, 0}}, {2, {3, 4}}, {1, {0, 5}}};
  EXPECT_EQ(ids(order_units(v, {0, 0})), (std::vector<UnitId>{1, 2, 3}));
}

TEST(OrderUnits, SingleAndEmpty) {
  EXPECT_EQ(ids(order_units(std::vector<P>{{7, {3, 3}}}, {0, 0})), std::vector<UnitId>{7});
  EXPECT_TRUE(order_units(std::vector<P>{}, {0, 0}).empty());
}

TEST(OrderUnits, MatchesBruteForceChain) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<P> v;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      v.push_back({static_cast<UnitId>(i + 1), {static_cast<int>(rng() % 10), static_cast<int>(rng() % 10)}});
    }
    const Point anchor{static_cast<double>(rng() % 10), static_cast<double>(rng() % 10)};
    // Independent chain: repeatedly scan every remaining pair cost in integer arithmetic.
    std::vector<UnitId> expect;
    std::set<UnitId> left;
    for (const auto& p : v) left.insert(p.id);
    long cx = static_cast<long>(anchor.x), cy = static_cast<long>(anchor.y);
    while (!left.empty()) {
      UnitId best = 0;
      long best_d = -1;
      for (UnitId id : left) {
        const auto& q = v[id - 1].pos;
        const long d = (q.x - cx) * (q.x - cx) + (q.y - cy) * (q.y - cy);
        if (best_d < 0 || d < best_d) {
          best = id;
          best_d = d;
        }
      }
      expect.push_back(best);
      cx = v[best - 1].pos.x;
      cy = v[best - 1].pos.y;
      left.erase(best);
    }
    EXPECT_EQ(ids(order_units(v, anchor)), expect);
  }
}

TEST(OrderUnits, PermutationInvariant) {
  std::mt19937_64 rng(99);
  for (int set = 0; set < 20; ++set) {
    std::vector<P> v;
    for (UnitId i = 1; i <= 50; ++i) {
      v.push_back({i * 7 + static_cast<UnitId>(rng() % 5), {static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)}});
    }
    const auto want = ids(order_units(v, {10, 10}));
    std::multiset<UnitId> a(want.begin(), want.end()), b;
    for (const auto& p : v) b.insert(p.id);
    EXPECT_EQ(a, b);
    for (int k = 0; k < 50; ++k) {
      std::shuffle(v.begin(), v.end(), rng);
      ASSERT_EQ(ids(order_units(v, {10, 10})), want);
    }
  }
}

UnitView worker(UnitId id, bool collecting) {
  UnitView u;
  u.id = id;
  u.kind = "Probe";
  u.worker = true;
  u.collecting = collecting;
  u.state = collecting ? "collecting" : "constructing [5] Pylon";
  return u;
}

TEST(Aggregate, PartitionsCollectingWorkers) {
  UnitView zealot;
  zealot.id = 4;
  zealot.kind = "Zealot";
  const auto a = aggregate_workers({worker(1, true), worker(2, false), zealot, worker(3, true),
                                    worker(9, true)});
  ASSERT_EQ(a.groups.size(), 1u);
  EXPECT_EQ(a.groups[0].ids, (std::vector<UnitId>{1, 3, 9}));
  ASSERT_EQ(a.individuals.size(), 2u);
  EXPECT_EQ(a.individuals[0].id, 2u);
  EXPECT_EQ(a.individuals[1].id, 4u);
}

TEST(Aggregate, NoWorkersNoGroup) {
  UnitView zealot;
  zealot.id = 4;
  EXPECT_TRUE(aggregate_workers({zealot}).groups.empty());
  EXPECT_TRUE(aggregate_workers({}).groups.empty());
}

TEST(Render, Clock) {
  EXPECT_EQ(format_clock(4128, 16), "04:18");
  EXPECT_EQ(format_clock(0, 16), "00:00");
  EXPECT_EQ(format_clock(16 * 3600, 16), "60:00");
}

TEST(Render, ReferenceGolden) {
  const auto obs = render_view(fixtures::reference_view(), fixtures::reference_history());
  const auto golden = read_file(std::string(RTSARENA_SOURCE_DIR) + "/tests/golden/reference_observation.txt");
  EXPECT_EQ(obs.full_text + "\n", golden);
  EXPECT_NE(obs.full_text.find("Time: 04:18"), std::string::npos);
  EXPECT_NE(obs.full_text.find("# Visible enemy units\n[Empty]"), std::string::npos);
  EXPECT_NE(obs.full_text.find("] Probe\nState: collecting resources automatically"),
            std::string::npos);
}

TEST(Render, SectionOrder) {
  const auto obs = render_view(fixtures::reference_view(), fixtures::reference_history());
  ASSERT_EQ(obs.sections.size(), std::size(kSectionNames));
  for (std::size_t i = 0; i < obs.sections.size(); ++i) {
    EXPECT_EQ(obs.sections[i].name, kSectionNames[i]);
  }
}

TEST(Render, ShuffledViewRendersIdentically) {
  auto v = fixtures::reference_view();
  const auto h = fixtures::reference_history();
  const auto want = render_view(v, h).full_text;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::shuffle(v.units.begin(), v.units.end(), rng);
    std::shuffle(v.structures.begin(), v.structures.end(), rng);
    std::shuffle(v.enemy_structures.begin(), v.enemy_structures.end(), rng);
    std::shuffle(v.geysers.begin(), v.geysers.end(), rng);
    ASSERT_EQ(render_view(v, h).full_text, want);
  }
}

TEST(Render, HistoryKeepsLastTen) {
  ActionHistory h;
  for (UnitId i = 0; i < 25; ++i) h.push({"MOVE_MOVE", {i}, {}, sim::Cell{1, 1}});
  ASSERT_EQ(h.lines().size(), 10u);
  EXPECT_EQ(h.lines().back(), R"({"action": "MOVE_MOVE", "units": [24], "target_position": [1, 1]})");
}

sim::GameState live_state() {
  sim::MatchConfig c;
  c.seed = 4;
  return sim::create_match(c);
}

TEST(Render, LiveStateIdsAndCostsRoundTrip) {
  auto s = live_state();
  for (int i = 0; i < 50; ++i) sim::step(s, {});
  const auto obs = render_observation(s, 1, ActionHistory{});
  const auto& cat = sim::Catalog::get();
  for (const auto& sec : obs.sections) {
    if (sec.name != "Own units" && sec.name != "Own structures") continue;
    std::istringstream in(sec.text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] != '[') continue;
      std::string list = line.substr(1, line.find(']') - 1);
      std::replace(list.begin(), list.end(), ',', ' ');
      std::istringstream ids_in(list);
      UnitId id;
      while (ids_in >> id) {
        const auto* u = s.find(id);
        ASSERT_NE(u, nullptr);
        EXPECT_EQ(u->owner, 1);
      }
    }
  }
  const auto& desc = obs.sections.back().text;
  for (const auto aid : cat.faction_abilities(sim::Faction::F3)) {
    const auto& a = cat.ability(aid);
    const auto at = desc.find(a.name + "(");
    if (at == std::string::npos) continue;
    const auto line = desc.substr(at, desc.find('\n', at) - at);
    if (a.minerals) {
      EXPECT_NE(line.find("Cost: " + std::to_string(a.minerals) + " minerals"), std::string::npos)
          << line;
    } else {
      EXPECT_EQ(line.find("Cost:"), std::string::npos) << line;
    }
  }
  EXPECT_NE(desc.find("NEXUSTRAIN_PROBE(target: None): Train a Probe. Cost: 50 minerals."),
            std::string::npos);
}

TEST(Render, WorkersAggregateAtStart) {
  auto s = live_state();
  for (int i = 0; i < 20; ++i) sim::step(s, {});
  const auto v = make_view(s, 1);
  const auto agg = aggregate_workers(v.units);
  ASSERT_EQ(agg.groups.size(), 1u);
  EXPECT_EQ(agg.groups[0].ids.size(), 12u);
  EXPECT_TRUE(agg.individuals.empty());
}

TEST(Render, HiddenEnemyStructureExcluded) {
  auto s = live_state();
  const auto* enemy_hq = fixtures::first_of(s, 2, "Nexus");
  ASSERT_NE(enemy_hq, nullptr);
  const UnitId hq_id = enemy_hq->id;
  const Cell hq_pos = enemy_hq->pos;
  auto& scout = fixtures::place(s, "Zealot", 1, {hq_pos.x - 3, hq_pos.y - 3});
  const UnitId scout_id = scout.id;
  sim::step(s, {});
  auto text = render_observation(s, 1, ActionHistory{}).full_text;
  EXPECT_NE(text.find("[" + std::to_string(hq_id) + "] Nexus"), std::string::npos);

  s.units.erase(scout_id);
  sim::step(s, {});
  const auto v = make_view(s, 1);
  EXPECT_TRUE(v.enemy_structures.empty());
  text = render_view(v, ActionHistory{}).full_text;
  EXPECT_EQ(text.find("[" + std::to_string(hq_id) + "] Nexus"), std::string::npos);
  EXPECT_NE(text.find("# Visible enemy structures\n[Empty]"), std::string::npos);
}

}  // namespace
}  // namespace rtsarena::obs
