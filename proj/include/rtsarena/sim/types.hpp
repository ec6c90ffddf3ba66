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
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtsarena/sim/catalog.hpp"

namespace rtsarena::sim {

inline constexpr std::string_view kKernelVersion = "1.0.0";

using UnitId = std::uint32_t;
using PlayerId = int;  // 1 or 2; 0 marks neutral resource nodes
inline constexpr PlayerId kNeutral = 0;
inline constexpr std::size_t kQueueCapacity = 5;
inline constexpr int kSupplyLimit = 200;

inline PlayerId opponent(PlayerId p) { return p == 1 ? 2 : 1; }

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline long dist2(Cell a, Cell b) {
  const long dx = a.x - b.x;
  const long dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Pool {
  int current = 0;
  int max = 0;
  friend bool operator==(const Pool&, const Pool&) = default;
};

enum class OrderKind : std::uint8_t { kIdle, kMove, kAttack, kGather, kConstruct, kRepair };

struct Order {
  OrderKind kind = OrderKind::kIdle;
  UnitId target_unit = 0;          // explicit target, or acquired target while attack-moving
  std::optional<Cell> target_pos;  // move / attack-move destination
  int stuck_ticks = 0;
  friend bool operator==(const Order&, const Order&) = default;
};

struct ProductionItem {
  AbilityId ability = 0;
  int progress = 0;  // half-ticks; chrono boost adds three per tick instead of two
  int total = 0;
  friend bool operator==(const ProductionItem&, const ProductionItem&) = default;
};

// Printed unit state.
enum class UnitState : std::uint8_t {
  kIdle,
  kMoving,
  kAttacking,
  kCollecting,
  kConstructing,
  kProducing,
};

struct Unit {
  UnitId id = 0;
  KindId kind = 0;
  PlayerId owner = kNeutral;
  Cell pos;
  Pool health;
  Pool shield;
  Pool energy;
  Order order;
  std::vector<ProductionItem> queue;  // production list, at most kQueueCapacity
  int build_progress = 0;             // structures: == build_total once complete
  int build_total = 0;
  int weapon_cooldown = 0;
  int move_cooldown = 0;
  int gather_timer = 0;
  int last_damaged_tick = -100000;
  int resource = 0;        // neutral nodes: remaining amount
  UnitId addon = 0;        // host structure -> its add-on
  UnitId attached_to = 0;  // add-on -> host structure
  UnitId node = 0;         // extractor -> geyser underneath
  int larva = 0;
  int larva_timer = 0;
  int chrono_until = -1;
  int expires_at = -1;

  bool complete() const { return build_progress >= build_total; }
  friend bool operator==(const Unit&, const Unit&) = default;
};

struct PlayerState {
  Faction faction = Faction::F1;
  int minerals = 0;
  int vespene = 0;
  int supply_army = 0;
  int supply_workers = 0;
  int supply_unused = 0;
  int supply_cap = 0;
  std::vector<std::string> tech;  // researched flags, sorted

  bool has_tech(std::string_view t) const;
  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct MatchConfig {
  int map_width = 48;
  int map_height = 48;
  std::array<Faction, 2> factions{Faction::F3, Faction::F3};
  std::array<std::optional<int>, 2> builtin_difficulty{};
  std::uint64_t seed = 0;
  int max_ticks = 16 * 60 * 15;
  int ticks_per_game_second = 16;

  // Throws ConfigError.
  void validate() const;
  friend bool operator==(const MatchConfig&, const MatchConfig&) = default;
};

enum class EventType : std::uint8_t {
  kCost,
  kIncome,
  kRejected,
  kSpawned,
  kDied,
  kConstructionStarted,
  kCompleted,
  kResearched,
  kExpired,
};

std::string_view event_type_name(EventType t);
std::optional<EventType> parse_event_type(std::string_view s);

struct Event {
  int tick = 0;
  EventType type = EventType::kCost;
  PlayerId player = kNeutral;
  UnitId unit = 0;
  int minerals = 0;
  int vespene = 0;
  std::string detail;
  friend bool operator==(const Event&, const Event&) = default;
};

// One protocol action. Exactly one of the targets may be set.
struct ActionRequest {
  std::string action;
  std::vector<UnitId> units;
  std::optional<UnitId> target_unit;
  std::optional<Cell> target_position;
  friend bool operator==(const ActionRequest&, const ActionRequest&) = default;
};

using ActionBatch = std::vector<ActionRequest>;
using JointActions = std::array<ActionBatch, 2>;

struct GameState {
  MatchConfig config;
  int tick = 0;
  std::array<PlayerState, 2> players;
  std::map<UnitId, Unit> units;  // id order gives lowest-id-first iteration
  UnitId next_id = 1;
  std::array<std::vector<std::uint8_t>, 2> fog;  // 1 = visible, row-major
  std::mt19937_64 rng;
  std::vector<Event> event_log;

  PlayerState& player(PlayerId p) { return players.at(static_cast<std::size_t>(p - 1)); }
  const PlayerState& player(PlayerId p) const {
    return players.at(static_cast<std::size_t>(p - 1));
  }
  const Unit* find(UnitId id) const;
  Unit* find(UnitId id);
  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < config.map_width && c.y < config.map_height;
  }
  bool visible(PlayerId viewer, Cell c) const;
};

const UnitKindDef& kind_of(const Unit& u);
UnitState unit_state(const Unit& u);

}  // namespace rtsarena::sim
