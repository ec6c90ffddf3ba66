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

#include <algorithm>

#include "rtsarena/sim/types.hpp"

namespace rtsarena::sim {

bool PlayerState::has_tech(std::string_view t) const {
  return std::binary_search(tech.begin(), tech.end(), t);
}

void MatchConfig::validate() const {
  if (map_width < 16 || map_height < 16) {
    throw ConfigError("map dimensions must be at least 16x16");
  }
  if (max_ticks <= 0) throw ConfigError("max_ticks must be positive");
  if (ticks_per_game_second <= 0) throw ConfigError("ticks_per_game_second must be positive");
  for (const auto& level : builtin_difficulty) {
    if (level && (*level < 1 || *level > 7)) {
      throw ConfigError("builtin difficulty must be in 1..7");
    }
  }
}

namespace {
constexpr std::pair<EventType, std::string_view> kEventNames[] = {
    {EventType::kCost, "cost"},
    {EventType::kIncome, "income"},
    {EventType::kRejected, "rejected"},
    {EventType::kSpawned, "spawned"},
    {EventType::kDied, "died"},
    {EventType::kConstructionStarted, "construction_started"},
    {EventType::kCompleted, "completed"},
    {EventType::kResearched, "researched"},
    {EventType::kExpired, "expired"},
};
}  // namespace

std::string_view event_type_name(EventType t) {
  for (const auto& [type, name] : kEventNames) {
    if (type == t) return name;
  }
  return "unknown";
}

std::optional<EventType> parse_event_type(std::string_view s) {
  for (const auto& [type, name] : kEventNames) {
    if (name == s) return type;
  }
  return std::nullopt;
}

const Unit* GameState::find(UnitId id) const {
  auto it = units.find(id);
  return it == units.end() ? nullptr : &it->second;
}

Unit* GameState::find(UnitId id) {
  auto it = units.find(id);
  return it == units.end() ? nullptr : &it->second;
}

bool GameState::visible(PlayerId viewer, Cell c) const {
  if (!in_bounds(c)) return false;
  const auto& mask = fog.at(static_cast<std::size_t>(viewer - 1));
  if (mask.empty()) return false;
  return mask[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(config.map_width) +
              static_cast<std::size_t>(c.x)] != 0;
}

const UnitKindDef& kind_of(const Unit& u) { return Catalog::get().kind(u.kind); }

UnitState unit_state(const Unit& u) {
  const auto& k = kind_of(u);
  if (is_structure(k)) {
    if (!u.complete()) return UnitState::kConstructing;
    if (!u.queue.empty()) return UnitState::kProducing;
    return UnitState::kIdle;
  }
  switch (u.order.kind) {
    case OrderKind::kIdle: return UnitState::kIdle;
    case OrderKind::kMove: return UnitState::kMoving;
    case OrderKind::kAttack: return UnitState::kAttacking;
    case OrderKind::kGather: return UnitState::kCollecting;
    case OrderKind::kConstruct: return UnitState::kConstructing;
    case OrderKind::kRepair: return UnitState::kConstructing;
  }
  return UnitState::kIdle;
}

}  // namespace rtsarena::sim
