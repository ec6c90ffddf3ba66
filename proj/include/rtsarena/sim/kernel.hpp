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
#include <set>
#include <string>
#include <vector>

#include "rtsarena/sim/types.hpp"

namespace rtsarena::sim {

GameState create_match(const MatchConfig& config);

// Starting headquarters cell of a player.
Cell start_location(const MatchConfig& config, PlayerId player);

struct StepResult {
  std::vector<Event> events;
  // Indices into each player's submitted batch that actually executed.
  std::array<std::vector<std::size_t>, 2> executed;
};

// Advances one tick. Actions that fail the command checks are dropped and
// logged as kRejected events; nothing here throws for bad input.
StepResult step(GameState& state, const JointActions& actions);

// Printed abilities per living own unit, in kind order. Cost is not checked.
std::map<UnitId, std::vector<std::string>> legal_abilities(const GameState& state,
                                                           PlayerId player);

// True when the unit may issue the ability, including automation-only ones.
bool ability_usable(const GameState& state, const Unit& unit, const AbilityDef& ability);

enum class OutcomeKind { kOngoing, kWin, kTie };
struct Outcome {
  OutcomeKind kind = OutcomeKind::kOngoing;
  PlayerId winner = kNeutral;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};
Outcome outcome(const GameState& state);

// Hex digest over everything that influences future ticks.
std::string state_digest(const GameState& state);

bool supply_capped(const PlayerState& p);
int structure_count(const GameState& state, PlayerId player);

// Harvester saturation of a headquarters or extractor: {current, capacity}.
Pool harvesters(const GameState& state, const Unit& structure);
// Mineral fields within this radius (squared) of a headquarters feed it.
inline constexpr long kBaseRadius2 = 8 * 8;

// Completed own pylons power structures within this radius (squared).
inline constexpr long kPowerRadius2 = 42;
bool powered(const GameState& state, PlayerId player, Cell at);

// ---- command checking, shared by step() and the action verifier ----

enum class Stage { kSyntax, kSemantics, kFeasibility };
std::string_view stage_name(Stage s);

enum class Fault {
  kUnknownAbility,
  kUnitNotOwned,
  kDuplicateUnit,
  kAbilityUnavailable,
  kTargetSignature,
  kTargetUnitInvalid,
  kTargetPositionOutOfBounds,
  kSingleUnitRequired,
  kQueueFull,
  kBusy,
  kPlacementBlocked,
  kUnpowered,
  kNoLarva,
  kEnergy,
  kResearchInProgress,
  kMinerals,
  kVespene,
  kSupply,
};

Stage fault_stage(Fault f);

struct ActionFault {
  Fault code = Fault::kUnknownAbility;
  std::size_t index = 0;  // position of the action in its batch
  UnitId unit = 0;
  std::string detail;
};

// Checks a batch against one state without mutating it. Reservations made by
// earlier actions (units, cells, geysers, research, resources, supply) are
// honoured by later ones, so a batch that passes here executes in step()
// with no rejections.
class BatchChecker {
 public:
  BatchChecker(const GameState& state, PlayerId player);

  // Per-action checks; costs are accumulated for finish().
  std::vector<ActionFault> check(const ActionRequest& action, std::size_t index);
  // Batch-total resource and supply checks.
  std::vector<ActionFault> finish() const;

  // Total cost of an action (all commanded units).
  struct Cost {
    int minerals = 0;
    int vespene = 0;
    int supply = 0;
  };
  Cost cost_of(const ActionRequest& action) const;

 private:
  const GameState& state_;
  PlayerId player_;
  std::set<UnitId> used_units_;
  std::set<std::pair<int, int>> reserved_cells_;
  std::set<UnitId> reserved_geysers_;
  std::set<std::string> reserved_research_;
  std::set<UnitId> consumed_;
  Cost total_;
};

}  // namespace rtsarena::sim
