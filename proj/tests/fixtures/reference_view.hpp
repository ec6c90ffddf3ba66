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

#include <string>
#include <vector>

#include "rtsarena/obs/observation.hpp"

namespace rtsarena::fixtures {

inline obs::UnitView unit(sim::UnitId id, std::string kind, sim::Cell pos, int hp, int shield,
                          std::string state) {
  obs::UnitView u;
  u.id = id;
  u.kind = std::move(kind);
  u.pos = pos;
  u.health = {hp, hp};
  u.shield = {shield, shield};
  u.state = std::move(state);
  return u;
}

// Mid-game Protoss view: 17 mining probes, a small army pushing the enemy
// main, two busy gateways and no visible enemy units.
inline obs::FoggedView reference_view() {
  obs::FoggedView v;
  v.tick = 4128;
  v.ticks_per_second = 16;
  v.faction = sim::Faction::F3;
  v.player.faction = sim::Faction::F3;
  v.player.minerals = 175;
  v.player.vespene = 154;
  v.player.supply_army = 18;
  v.player.supply_workers = 18;
  v.player.supply_unused = 3;
  v.player.supply_cap = 39;
  v.player.tech = {"WarpGate"};
  v.map_width = 48;
  v.map_height = 48;
  v.anchor = {47, 22};

  const std::vector<sim::UnitId> probes = {9,   809, 953, 569, 665, 857, 721, 529, 281,
                                           385, 818, 145, 105, 129, 521, 697, 97};
  const std::vector<std::string> probe_abilities = {
      "PROTOSSBUILD_NEXUS",          "PROTOSSBUILD_PYLON",
      "PROTOSSBUILD_ASSIMILATOR",    "PROTOSSBUILD_GATEWAY",
      "PROTOSSBUILD_FORGE",          "PROTOSSBUILD_TWILIGHTCOUNCIL",
      "PROTOSSBUILD_STARGATE",       "PROTOSSBUILD_ROBOTICSFACILITY",
      "PROTOSSBUILD_CYBERNETICSCORE", "BUILD_SHIELDBATTERY"};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    auto p = unit(probes[i], "Probe", {49 + static_cast<int>(i), 22}, 20, 20, "collecting");
    p.worker = true;
    p.collecting = true;
    v.units.push_back(p);
    v.abilities[p.id] = probe_abilities;
  }
  const std::vector<std::string> army = {"ATTACK_ATTACK", "MOVE_MOVE"};
  for (auto u : {unit(2, "Zealot", {48, 48}, 100, 50, "attacking [249] Nexus"),
                 unit(122, "Zealot", {49, 47}, 100, 50, "attacking [249] Nexus"),
                 unit(260, "Zealot", {50, 38}, 100, 50, "attacking [705] Gateway"),
                 unit(399, "Stalker", {43, 17}, 80, 80, "idle"),
                 unit(434, "Stalker", {44, 36}, 80, 80, "attacking [249] Nexus"),
                 unit(539, "Zealot", {40, 13}, 100, 50, "idle"),
                 unit(986, "Zealot", {46, 42}, 100, 50, "attacking [249] Nexus")}) {
    v.units.push_back(u);
    v.abilities[u.id] = army;
  }

  auto nexus = unit(377, "Nexus", {47, 22}, 1000, 1000, "idle");
  nexus.energy = {53, 200};
  nexus.harvesters = sim::Pool{15, 16};
  v.abilities[377] = {"NEXUSTRAIN_PROBE", "EFFECT_CHRONOBOOSTENERGYCOST",
                      "EFFECT_MASSRECALL_NEXUS"};
  auto gate_a = unit(273, "Gateway", {43, 19}, 500, 500, "idle");
  gate_a.production = {"Stalker", "Stalker", "Stalker", "Stalker"};
  auto gate_b = unit(554, "Gateway", {40, 15}, 500, 500, "idle");
  gate_b.production = {"Zealot", "Zealot"};
  const std::vector<std::string> gateway = {"GATEWAYTRAIN_ZEALOT", "GATEWAYTRAIN_STALKER",
                                            "GATEWAYTRAIN_SENTRY", "TRAIN_ADEPT"};
  v.abilities[273] = gateway;
  v.abilities[554] = gateway;
  auto damaged = unit(713, "Pylon", {41, 19}, 200, 200, "idle");
  damaged.health.current = 136;
  auto assimilator = unit(841, "Assimilator", {54, 25}, 300, 300, "idle");
  assimilator.harvesters = sim::Pool{3, 3};
  v.abilities[289] = {"CYBERNETICSCORERESEARCH_PROTOSSAIRWEAPONSLEVEL1",
                      "CYBERNETICSCORERESEARCH_PROTOSSAIRARMORLEVEL1"};
  v.structures = {unit(289, "CyberneticsCore", {46, 13}, 550, 550, "idle"),
                  unit(265, "Pylon", {48, 19}, 200, 200, "idle"),
                  nexus,
                  gate_a,
                  gate_b,
                  damaged,
                  assimilator,
                  unit(978, "Pylon", {42, 13}, 200, 200, "idle")};

  auto enemy_gate = unit(705, "Gateway", {50, 40}, 500, 500, "");
  enemy_gate.shield.current = 487;
  auto enemy_nexus = unit(249, "Nexus", {47, 45}, 1000, 1000, "");
  enemy_nexus.shield.current = 136;
  enemy_nexus.energy = {53, 200};
  v.enemy_structures = {enemy_nexus, unit(429, "Pylon", {37, 50}, 200, 200, ""),
                        unit(561, "Assimilator", {54, 42}, 300, 300, ""), enemy_gate};

  v.geysers = {{625, {43, 52}}, {193, {54, 42}}, {729, {43, 15}}};
  return v;
}

inline obs::ActionHistory reference_history() {
  using sim::ActionRequest;
  obs::ActionHistory h;
  for (const ActionRequest& a : std::vector<ActionRequest>{
           {"GATEWAYTRAIN_STALKER", {273}, {}, {}},
           {"GATEWAYTRAIN_ZEALOT", {554}, {}, {}},
           {"ATTACK_ATTACK", {434}, 418, {}},
           {"ATTACK_ATTACK", {986}, 242, {}},
           {"GATEWAYTRAIN_STALKER", {273}, {}, {}},
           {"MOVE_MOVE", {2}, {}, sim::Cell{47, 45}},
           {"GATEWAYTRAIN_STALKER", {273}, {}, {}},
           {"ATTACK_ATTACK", {434}, 249, {}},
           {"ATTACK_ATTACK", {986}, 249, {}},
           {"GATEWAYTRAIN_STALKER", {273}, {}, {}}}) {
    h.push(a);
  }
  return h;
}

}  // namespace rtsarena::fixtures
