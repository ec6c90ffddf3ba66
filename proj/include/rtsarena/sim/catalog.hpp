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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtsarena::sim {

// F1 is the Terran-like side, F2 Zerg-like, F3 Protoss-like.
enum class Faction : std::uint8_t { F1 = 0, F2 = 1, F3 = 2 };

inline constexpr Faction kAllFactions[] = {Faction::F1, Faction::F2, Faction::F3};

std::string_view faction_id(Faction f);    // "F1"
std::string_view faction_race(Faction f);  // "Terran"
// Accepts "F1".."F3" or the race name in any case.
std::optional<Faction> parse_faction(std::string_view s);

enum class UnitClass : std::uint8_t {
  kWorker,
  kArmy,
  kSupplyUnit,  // trainable unit that only provides supply
  kStructure,
  kMineralField,
  kGeyser,
};

enum class StructureRole : std::uint8_t {
  kNone,
  kHeadquarters,
  kSupply,
  kExtractor,
  kProduction,
  kTech,
  kAddon,
};

enum class TargetKind : std::uint8_t { kNone, kPoint, kUnit, kPointOrUnit };
std::string_view target_kind_name(TargetKind t);  // "PointOrUnit"

enum class Effect : std::uint8_t {
  kMove,
  kAttack,
  kGather,
  kBuild,
  kTrain,
  kTrainLarva,
  kResearch,
  kMorph,
  kBuildAddon,
  kChrono,
  kMassRecall,
  kInjectLarva,
  kCallDownMule,
  kRepair,
};

using KindId = std::uint16_t;
using AbilityId = std::uint16_t;

struct UnitKindDef {
  std::string name;
  std::optional<Faction> faction;  // nullopt for neutral resource nodes
  UnitClass cls = UnitClass::kArmy;
  StructureRole role = StructureRole::kNone;
  int max_health = 1;
  int max_shield = 0;
  int max_energy = 0;
  int start_energy = 0;
  int sight = 8;
  int move_period = 0;  // ticks per cell; 0 means immobile
  int damage = 0;
  int range = 0;
  int cooldown = 0;
  int supply_cost = 0;
  int supply_provided = 0;
  int minerals = 0;  // production cost, also the converted resource value
  int vespene = 0;
  int build_time = 0;  // ticks at 16 ticks per game second
  int harvester_capacity = 0;
  int resource_amount = 0;  // neutral nodes
  bool needs_power = false;
  std::vector<std::string> abilities;   // printed in observations
  std::vector<std::string> automation;  // usable but never printed
};

struct AbilityDef {
  std::string name;
  std::optional<Faction> faction;  // nullopt: shared by every faction
  TargetKind target = TargetKind::kNone;
  Effect effect = Effect::kMove;
  int minerals = 0;
  int vespene = 0;
  int energy = 0;
  std::string produces;  // unit kind for build/train/morph/addon
  std::string tech;      // research flag
  int research_time = 0;
  std::vector<std::string> requires_structures;  // completed own structures
  bool requires_addon = false;
  std::string description;
};

class Catalog {
 public:
  static const Catalog& get();

  const UnitKindDef& kind(KindId id) const { return kinds_.at(id); }
  const AbilityDef& ability(AbilityId id) const { return abilities_.at(id); }
  std::size_t kind_count() const { return kinds_.size(); }
  std::size_t ability_count() const { return abilities_.size(); }

  std::optional<KindId> find_kind(std::string_view name) const;
  KindId kind_id(std::string_view name) const;  // throws on unknown
  // Faction-specific abilities shadow shared ones.
  std::optional<AbilityId> find_ability(Faction f, std::string_view name) const;

  // Abilities of a faction in description order (shared ones first).
  std::vector<AbilityId> faction_abilities(Faction f) const;

  KindId headquarters(Faction f) const;
  KindId worker(Faction f) const;
  KindId supply_provider(Faction f) const;  // structure or unit
  KindId extractor(Faction f) const;
  KindId mineral_field() const { return mineral_field_; }
  KindId geyser() const { return geyser_; }

  // Supply change applied when this ability is queued (train kinds only).
  int supply_delta(const AbilityDef& a) const;

 private:
  Catalog();
  std::vector<UnitKindDef> kinds_;
  std::vector<AbilityDef> abilities_;
  KindId mineral_field_ = 0;
  KindId geyser_ = 0;
};

inline bool is_structure(const UnitKindDef& k) { return k.cls == UnitClass::kStructure; }
inline bool is_resource(const UnitKindDef& k) {
  return k.cls == UnitClass::kMineralField || k.cls == UnitClass::kGeyser;
}
inline bool is_mobile(const UnitKindDef& k) { return k.move_period > 0; }

}  // namespace rtsarena::sim
