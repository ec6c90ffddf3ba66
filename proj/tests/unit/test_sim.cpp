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

#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::sim {
namespace {

MatchConfig cfg(Faction a = Faction::F3, Faction b = Faction::F3, std::uint64_t seed = 7) {
  MatchConfig c;
  c.factions = {a, b};
  c.seed = seed;
  return c;
}

const Unit* first_of(const GameState& s, PlayerId p, std::string_view kind) {
  for (const auto& [id, u] : s.units) {
    if (u.owner == p && kind_of(u).name == kind) return &u;
  }
  return nullptr;
}

TEST(Sim, SameSeedSameInitialState) {
  const auto a = create_match(cfg());
  const auto b = create_match(cfg());
  EXPECT_EQ(state_digest(a), state_digest(b));
  EXPECT_EQ(a.units, b.units);
}

TEST(Sim, DefaultMapIs48) {
  const auto s = create_match(MatchConfig{});
  EXPECT_EQ(s.config.map_width, 48);
  EXPECT_EQ(s.config.map_height, 48);
}

TEST(Sim, RejectsSmallMap) {
  MatchConfig c;
  c.map_width = 15;
  EXPECT_THROW(create_match(c), ConfigError);
  c.map_width = 16;
  c.max_ticks = 0;
  EXPECT_THROW(create_match(c), ConfigError);
}

TEST(Sim, HeadquartersHarvesters) {
  const auto s = create_match(cfg());
  const Unit* nexus = first_of(s, 1, "Nexus");
  ASSERT_NE(nexus, nullptr);
  EXPECT_EQ(harvesters(s, *nexus), (Pool{12, 16}));
}

TEST(Sim, StartingSupply) {
  for (Faction f : kAllFactions) {
    const auto s = create_match(cfg(f, f));
    const auto& p = s.player(1);
    EXPECT_EQ(p.supply_workers, 12);
    EXPECT_EQ(p.supply_army, 0);
    EXPECT_EQ(p.supply_unused, p.supply_cap - 12);
    EXPECT_EQ(p.minerals, 50);
  }
}

TEST(Sim, IdleTicksOnlyPassiveDynamics) {
  auto s = create_match(cfg());
  const auto before = s.units.size();
  for (int i = 0; i < 400; ++i) step(s, {});
  EXPECT_GT(s.player(1).minerals, 50);
  EXPECT_EQ(s.player(1).minerals, s.player(2).minerals);
  for (const auto& e : s.event_log) {
    EXPECT_TRUE(e.type == EventType::kIncome) << event_type_name(e.type);
  }
  EXPECT_EQ(s.units.size(), before);
}

TEST(Sim, PylonDeductsCost) {
  auto s = create_match(cfg());
  s.player(1).minerals = 100;
  const Unit* probe = first_of(s, 1, "Probe");
  const Cell at{6, 6};
  ActionRequest a{"PROTOSSBUILD_PYLON", {probe->id}, std::nullopt, at};
  auto r = step(s, {ActionBatch{a}, ActionBatch{}});
  ASSERT_EQ(r.executed[0].size(), 1u);
  EXPECT_LE(s.player(1).minerals, 100 - 100 + 5);
  bool cost = false;
  for (const auto& e : r.events) {
    if (e.type == EventType::kCost) {
      EXPECT_EQ(e.minerals, 100);
      cost = true;
    }
  }
  EXPECT_TRUE(cost);
  const Unit* pylon = first_of(s, 1, "Pylon");
  ASSERT_NE(pylon, nullptr);
  EXPECT_FALSE(pylon->complete());
  EXPECT_EQ(unit_state(*pylon), UnitState::kConstructing);
}

TEST(Sim, InsufficientMineralsDroppedDefensively) {
  auto s = create_match(cfg());
  s.player(1).minerals = 99;
  const Unit* probe = first_of(s, 1, "Probe");
  ActionRequest a{"PROTOSSBUILD_PYLON", {probe->id}, std::nullopt, Cell{6, 6}};
  auto r = step(s, {ActionBatch{a}, ActionBatch{}});
  EXPECT_TRUE(r.executed[0].empty());
  ASSERT_FALSE(r.events.empty());
  EXPECT_EQ(r.events.front().type, EventType::kRejected);
  EXPECT_EQ(first_of(s, 1, "Pylon"), nullptr);
}

TEST(Sim, SymmetricDuelBothDie) {
  auto s = create_match(cfg());
  std::erase_if(s.units, [](const auto& kv) { return kv.second.owner != kNeutral &&
                                                     !is_structure(kind_of(kv.second)); });
  auto add = [&](PlayerId p, Cell c) {
    Unit u;
    u.id = s.next_id++;
    u.kind = Catalog::get().kind_id("Zealot");
    u.owner = p;
    u.pos = c;
    u.health = {100, 100};
    u.shield = {50, 50};
    s.units.emplace(u.id, u);
    return u.id;
  };
  const UnitId a = add(1, {20, 20});
  const UnitId b = add(2, {21, 20});
  step(s, {});
  ActionRequest ra{"ATTACK_ATTACK", {a}, b, std::nullopt};
  ActionRequest rb{"ATTACK_ATTACK", {b}, a, std::nullopt};
  JointActions ja{ActionBatch{ra}, ActionBatch{rb}};
  int died_tick_a = -1, died_tick_b = -1;
  for (int i = 0; i < 500 && (died_tick_a < 0 || died_tick_b < 0); ++i) {
    auto r = step(s, i == 0 ? ja : JointActions{});
    for (const auto& e : r.events) {
      if (e.type == EventType::kDied && e.unit == a) died_tick_a = e.tick;
      if (e.type == EventType::kDied && e.unit == b) died_tick_b = e.tick;
    }
  }
  EXPECT_GE(died_tick_a, 0);
  EXPECT_EQ(died_tick_a, died_tick_b);
}

TEST(Sim, Outcomes) {
  auto s = create_match(cfg());
  EXPECT_EQ(outcome(s).kind, OutcomeKind::kOngoing);
  auto t = s;
  std::erase_if(t.units, [](const auto& kv) { return kv.second.owner == 2; });
  EXPECT_EQ(outcome(t), (Outcome{OutcomeKind::kWin, 1}));
  std::erase_if(t.units, [](const auto& kv) { return kv.second.owner == 1; });
  EXPECT_EQ(outcome(t).kind, OutcomeKind::kTie);
  s.tick = s.config.max_ticks;
  EXPECT_EQ(outcome(s).kind, OutcomeKind::kTie);
}

TEST(Sim, LegalAbilities) {
  auto s = create_match(cfg());
  const auto legal = legal_abilities(s, 1);
  const Unit* probe = first_of(s, 1, "Probe");
  const auto& pa = legal.at(probe->id);
  EXPECT_NE(std::find(pa.begin(), pa.end(), "PROTOSSBUILD_PYLON"), pa.end());
  EXPECT_NE(std::find(pa.begin(), pa.end(), "PROTOSSBUILD_NEXUS"), pa.end());
  EXPECT_EQ(std::find(pa.begin(), pa.end(), "PROTOSSBUILD_GATEWAY"), pa.end());
  EXPECT_THROW(legal_abilities(s, 3), std::invalid_argument);
  const Unit* nexus = first_of(s, 1, "Nexus");
  EXPECT_EQ(legal.at(nexus->id).front(), "NEXUSTRAIN_PROBE");
}

TEST(Sim, TrainingRaisesSupplyAndSpawns) {
  auto s = create_match(cfg());
  s.player(1).minerals = 50;
  const Unit* nexus = first_of(s, 1, "Nexus");
  const UnitId nid = nexus->id;
  ActionRequest a{"NEXUSTRAIN_PROBE", {nid}, std::nullopt, std::nullopt};
  step(s, {ActionBatch{a}, ActionBatch{}});
  EXPECT_EQ(s.player(1).supply_workers, 13);
  int probes = 0;
  for (int i = 0; i < 12 * 16 + 2; ++i) step(s, {});
  for (const auto& [id, u] : s.units) probes += u.owner == 1 && kind_of(u).name == "Probe";
  EXPECT_EQ(probes, 13);
}

TEST(Sim, QueueNeverExceedsFive) {
  auto s = create_match(cfg());
  s.player(1).minerals = 10000;
  const UnitId nid = first_of(s, 1, "Nexus")->id;
  ActionBatch b;
  for (int i = 0; i < 7; ++i) b.push_back({"NEXUSTRAIN_PROBE", {nid}, std::nullopt, std::nullopt});
  auto r = step(s, {b, ActionBatch{}});
  EXPECT_EQ(s.find(nid)->queue.size(), 1u);
  EXPECT_EQ(r.executed[0].size(), 1u);
  for (int i = 0; i < 6; ++i) step(s, {ActionBatch{b.front()}, ActionBatch{}});
  EXPECT_LE(s.find(nid)->queue.size(), kQueueCapacity);
}

TEST(Sim, FogHidesDistantEnemy) {
  const auto s = create_match(cfg());
  const Unit* enemy = first_of(s, 2, "Nexus");
  EXPECT_FALSE(s.visible(1, enemy->pos));
  EXPECT_TRUE(s.visible(2, enemy->pos));
}

TEST(Sim, RunsAreReproducible) {
  auto run = [] {
    auto s = create_match(cfg(Faction::F1, Faction::F2, 11));
    for (int i = 0; i < 600; ++i) step(s, {});
    return state_digest(s);
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace rtsarena::sim
