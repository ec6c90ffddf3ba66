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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtsarena/sim/types.hpp"

namespace rtsarena::agent {

// Structured reading of a rendered observation (the text, not the state).
struct ParsedUnit {
  sim::UnitId id = 0;
  std::string kind;
  sim::Cell pos;
  std::string state;
  std::vector<std::string> production;
  std::optional<sim::Pool> harvesters;
  int larva = 0;
  int energy = 0;
  bool under_construction() const { return state.rfind("under construction", 0) == 0; }
};

struct ParsedCost {
  int minerals = 0;
  int vespene = 0;
  std::string target;  // None, Point, Unit, PointOrUnit
};

struct ParsedObservation {
  std::string race;
  int seconds = 0;
  int minerals = 0;
  int vespene = 0;
  int supply_army = 0;
  int supply_workers = 0;
  int supply_unused = 0;
  int map_width = 0;
  int map_height = 0;
  std::string worker_kind;
  std::vector<sim::UnitId> collecting;  // aggregated workers
  std::vector<ParsedUnit> units;
  std::vector<ParsedUnit> structures;
  std::vector<ParsedUnit> enemy_units;
  std::vector<ParsedUnit> enemy_structures;
  std::map<sim::UnitId, std::vector<std::string>> abilities;
  std::map<std::string, ParsedCost> costs;  // described (legal) abilities only
  std::vector<std::pair<sim::UnitId, sim::Cell>> mineral_fields;
  std::vector<std::pair<sim::UnitId, sim::Cell>> geysers;

  bool has(sim::UnitId id, std::string_view ability) const;
};

ParsedObservation parse_observation(const std::string& obs_text);

// Deterministic offline stand-in for a chat model. It answers planner,
// plan-verifier, executor and basic-agent prompts from the prompt text alone.
// With flaw_rate > 0 some first attempts contain a deliberate mistake that
// the feedback loop must repair.
class ScriptedModel {
 public:
  explicit ScriptedModel(double flaw_rate = 0.0) : flaw_rate_(flaw_rate) {}
  std::string operator()(const std::string& prompt) const;

  std::vector<std::string> plan(const ParsedObservation& obs) const;
  std::string execute(const ParsedObservation& obs, const std::vector<std::string>& commands,
                      bool flawed) const;

 private:
  std::string planner_reply(const std::string& prompt) const;
  std::string verifier_reply(const std::string& prompt) const;
  std::string executor_reply(const std::string& prompt) const;
  std::string naive_reply(const std::string& prompt) const;
  bool flawed(const std::string& prompt) const;

  double flaw_rate_;
};

}  // namespace rtsarena::agent
