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
#include <cctype>
#include <stdexcept>

#include "rtsarena/sim/catalog.hpp"

namespace rtsarena::sim {

std::string_view faction_id(Faction f) {
  switch (f) {
    case Faction::F1: return "F1";
    case Faction::F2: return "F2";
    case Faction::F3: return "F3";
  }
  return "F?";
}

std::string_view faction_race(Faction f) {
  switch (f) {
    case Faction::F1: return "Terran";
    case Faction::F2: return "Zerg";
    case Faction::F3: return "Protoss";
  }
  return "Unknown";
}

std::optional<Faction> parse_faction(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "f1" || lower == "terran") return Faction::F1;
  if (lower == "f2" || lower == "zerg") return Faction::F2;
  if (lower == "f3" || lower == "protoss") return Faction::F3;
  return std::nullopt;
}

std::string_view target_kind_name(TargetKind t) {
  switch (t) {
    case TargetKind::kNone: return "None";
    case TargetKind::kPoint: return "Point";
    case TargetKind::kUnit: return "Unit";
    case TargetKind::kPointOrUnit: return "PointOrUnit";
  }
  return "None";
}

const Catalog& Catalog::get() {
  static const Catalog instance;
  return instance;
}

std::optional<KindId> Catalog::find_kind(std::string_view name) const {
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i].name == name) return static_cast<KindId>(i);
  }
  return std::nullopt;
}

KindId Catalog::kind_id(std::string_view name) const {
  if (auto id = find_kind(name)) return *id;
  throw std::out_of_range("unknown unit kind: " + std::string(name));
}

std::optional<AbilityId> Catalog::find_ability(Faction f, std::string_view name) const {
  std::optional<AbilityId> shared;
  for (std::size_t i = 0; i < abilities_.size(); ++i) {
    const auto& a = abilities_[i];
    if (a.name != name) continue;
    if (a.faction == f) return static_cast<AbilityId>(i);
    if (!a.faction) shared = static_cast<AbilityId>(i);
  }
  return shared;
}

std::vector<AbilityId> Catalog::faction_abilities(Faction f) const {
  std::vector<AbilityId> out;
  for (std::size_t i = 0; i < abilities_.size(); ++i) {
    if (!abilities_[i].faction || abilities_[i].faction == f) {
      out.push_back(static_cast<AbilityId>(i));
    }
  }
  return out;
}

namespace {

KindId first_matching(const Catalog& c, Faction f, auto pred) {
  for (std::size_t i = 0; i < c.kind_count(); ++i) {
    const auto& k = c.kind(static_cast<KindId>(i));
    if (k.faction == f && pred(k)) return static_cast<KindId>(i);
  }
  throw std::logic_error("catalog: faction lacks a required kind");
}

}  // namespace

KindId Catalog::headquarters(Faction f) const {
  return first_matching(*this, f,
                        [](const UnitKindDef& k) { return k.role == StructureRole::kHeadquarters; });
}

KindId Catalog::worker(Faction f) const {
  return first_matching(*this, f, [](const UnitKindDef& k) {
    return k.cls == UnitClass::kWorker && k.supply_cost > 0;
  });
}

KindId Catalog::supply_provider(Faction f) const {
  return first_matching(*this, f, [](const UnitKindDef& k) {
    return k.role == StructureRole::kSupply || k.cls == UnitClass::kSupplyUnit;
  });
}

KindId Catalog::extractor(Faction f) const {
  return first_matching(*this, f,
                        [](const UnitKindDef& k) { return k.role == StructureRole::kExtractor; });
}

int Catalog::supply_delta(const AbilityDef& a) const {
  if (a.effect != Effect::kTrain && a.effect != Effect::kTrainLarva) return 0;
  return kind(kind_id(a.produces)).supply_cost;
}

}  // namespace rtsarena::sim
