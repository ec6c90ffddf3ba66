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
#include <limits>

#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::sim {

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::kSyntax: return "syntax";
    case Stage::kSemantics: return "semantics";
    case Stage::kFeasibility: return "feasibility";
  }
  return "syntax";
}

Stage fault_stage(Fault f) {
  switch (f) {
    case Fault::kUnknownAbility:
    case Fault::kUnitNotOwned:
    case Fault::kDuplicateUnit:
    case Fault::kAbilityUnavailable:
    case Fault::kTargetSignature:
    case Fault::kTargetUnitInvalid:
    case Fault::kTargetPositionOutOfBounds:
    case Fault::kSingleUnitRequired:
      return Stage::kSemantics;
    default:
      return Stage::kFeasibility;
  }
}

namespace {

const Catalog& cat() { return Catalog::get(); }

bool has_completed(const GameState& s, PlayerId p, std::string_view kind_name) {
  for (const auto& [id, u] : s.units) {
    if (u.owner == p && u.complete() && kind_of(u).name == kind_name) return true;
  }
  return false;
}

bool research_in_progress(const GameState& s, PlayerId p, std::string_view tech) {
  for (const auto& [id, u] : s.units) {
    if (u.owner != p) continue;
    for (const auto& item : u.queue) {
      if (cat().ability(item.ability).tech == tech) return true;
    }
  }
  return false;
}

bool lists(const std::vector<std::string>& v, std::string_view name) {
  return std::find(v.begin(), v.end(), name) != v.end();
}

bool host_busy(const GameState& s, const Unit& u) {
  if (u.addon == 0) return false;
  const Unit* addon = s.find(u.addon);
  return addon != nullptr && !addon->complete();
}

bool prerequisites_met(const GameState& s, const Unit& u, const AbilityDef& a) {
  for (const auto& req : a.requires_structures) {
    if (!has_completed(s, u.owner, req)) return false;
  }
  if (a.requires_addon) {
    const Unit* addon = u.addon ? s.find(u.addon) : nullptr;
    if (addon == nullptr || !addon->complete()) return false;
  }
  switch (a.effect) {
    case Effect::kResearch:
      return !s.player(u.owner).has_tech(a.tech) && !research_in_progress(s, u.owner, a.tech);
    case Effect::kBuildAddon:
      return u.addon == 0;
    default:
      return true;
  }
}

bool cell_blocked(const GameState& s, Cell c) {
  for (const auto& [id, u] : s.units) {
    if (u.pos == c && !is_mobile(kind_of(u))) return true;
  }
  return false;
}

const Unit* extractor_on(const GameState& s, UnitId geyser) {
  for (const auto& [id, u] : s.units) {
    if (u.node == geyser && kind_of(u).role == StructureRole::kExtractor) return &u;
  }
  return nullptr;
}

}  // namespace

bool powered(const GameState& s, PlayerId p, Cell at) {
  for (const auto& [id, u] : s.units) {
    if (u.owner == p && u.complete() && kind_of(u).role == StructureRole::kSupply &&
        kind_of(u).faction == Faction::F3 && dist2(u.pos, at) <= kPowerRadius2) {
      return true;
    }
  }
  return false;
}

bool ability_usable(const GameState& s, const Unit& u, const AbilityDef& a) {
  if (u.owner == kNeutral) return false;
  const auto& k = kind_of(u);
  if (is_structure(k) && (!u.complete() || host_busy(s, u))) return false;
  if (!lists(k.abilities, a.name) && !lists(k.automation, a.name)) return false;
  return prerequisites_met(s, u, a);
}

std::map<UnitId, std::vector<std::string>> legal_abilities(const GameState& s, PlayerId player) {
  if (player != 1 && player != 2) throw std::invalid_argument("unknown player");
  const Faction f = s.player(player).faction;
  std::map<UnitId, std::vector<std::string>> out;
  for (const auto& [id, u] : s.units) {
    if (u.owner != player) continue;
    std::vector<std::string> names;
    for (const auto& name : kind_of(u).abilities) {
      const auto aid = cat().find_ability(f, name);
      if (aid && ability_usable(s, u, cat().ability(*aid))) names.push_back(name);
    }
    out.emplace(id, std::move(names));
  }
  return out;
}

BatchChecker::BatchChecker(const GameState& state, PlayerId player)
    : state_(state), player_(player) {}

BatchChecker::Cost BatchChecker::cost_of(const ActionRequest& action) const {
  Cost c;
  const auto aid = cat().find_ability(state_.player(player_).faction, action.action);
  if (!aid) return c;
  const auto& a = cat().ability(*aid);
  const int n = a.effect == Effect::kBuild ? 1 : static_cast<int>(action.units.size());
  c.minerals = a.minerals * n;
  c.vespene = a.vespene * n;
  c.supply = cat().supply_delta(a) * n;
  return c;
}

std::vector<ActionFault> BatchChecker::check(const ActionRequest& action, std::size_t index) {
  std::vector<ActionFault> faults;
  auto fault = [&](Fault code, UnitId unit, std::string detail) {
    faults.push_back(ActionFault{code, index, unit, std::move(detail)});
  };
  const PlayerState& me = state_.player(player_);
  const auto aid = cat().find_ability(me.faction, action.action);
  const AbilityDef* a = aid ? &cat().ability(*aid) : nullptr;
  if (a == nullptr) fault(Fault::kUnknownAbility, 0, action.action);

  for (const UnitId id : action.units) {
    if (!used_units_.insert(id).second) {
      fault(Fault::kDuplicateUnit, id, "");
      continue;
    }
    const Unit* u = state_.find(id);
    if (u == nullptr || u->owner != player_) {
      fault(Fault::kUnitNotOwned, id, "");
      continue;
    }
    if (a == nullptr) continue;
    if (!ability_usable(state_, *u, *a)) {
      fault(Fault::kAbilityUnavailable, id, a->name);
      continue;
    }
    switch (a->effect) {
      case Effect::kTrain:
      case Effect::kTrainLarva:
      case Effect::kResearch:
      case Effect::kMorph:
      case Effect::kBuildAddon:
        if (u->queue.size() >= kQueueCapacity) fault(Fault::kQueueFull, id, "");
        break;
      default:
        break;
    }
    if (a->effect == Effect::kTrainLarva && u->larva < 1) fault(Fault::kNoLarva, id, "");
    if ((a->effect == Effect::kMorph || a->effect == Effect::kBuildAddon) && !u->queue.empty()) {
      fault(Fault::kBusy, id, "");
    }
    if (a->energy > 0 && u->energy.current < a->energy) {
      fault(Fault::kEnergy, id, std::to_string(a->energy));
    }
    if (kind_of(*u).needs_power && !powered(state_, player_, u->pos)) {
      fault(Fault::kUnpowered, id, "");
    }
  }
  if (a == nullptr) return faults;

  const bool has_unit = action.target_unit.has_value();
  const bool has_pos = action.target_position.has_value();
  bool signature_ok = true;
  switch (a->target) {
    case TargetKind::kNone: signature_ok = !has_unit && !has_pos; break;
    case TargetKind::kPoint: signature_ok = has_pos && !has_unit; break;
    case TargetKind::kUnit: signature_ok = has_unit && !has_pos; break;
    case TargetKind::kPointOrUnit: signature_ok = has_unit != has_pos; break;
  }
  if (!signature_ok) {
    fault(Fault::kTargetSignature, 0, std::string(target_kind_name(a->target)));
  }

  if ((a->effect == Effect::kBuild || a->effect == Effect::kResearch) &&
      action.units.size() != 1) {
    fault(Fault::kSingleUnitRequired, 0, "");
  }

  if (signature_ok && has_pos && !state_.in_bounds(*action.target_position)) {
    fault(Fault::kTargetPositionOutOfBounds, 0, "");
  }

  if (signature_ok && has_unit) {
    const UnitId tid = *action.target_unit;
    const Unit* t = state_.find(tid);
    const bool seen = t != nullptr && !consumed_.count(tid) &&
                      (t->owner == player_ || state_.visible(player_, t->pos));
    auto invalid = [&](std::string why) { fault(Fault::kTargetUnitInvalid, tid, std::move(why)); };
    if (!seen) {
      invalid("does not exist or is not visible");
    } else {
      const auto& tk = kind_of(*t);
      switch (a->effect) {
        case Effect::kAttack:
          if (t->owner != opponent(player_)) invalid("is not an enemy unit");
          break;
        case Effect::kGather:
          if (!(tk.cls == UnitClass::kMineralField ||
                (t->owner == player_ && tk.role == StructureRole::kExtractor && t->complete()))) {
            invalid("is not a mineral field or a completed own extractor");
          }
          break;
        case Effect::kBuild:
          if (tk.cls != UnitClass::kGeyser) {
            invalid("is not a vespene geyser");
          } else if (extractor_on(state_, tid) != nullptr || reserved_geysers_.count(tid)) {
            fault(Fault::kPlacementBlocked, tid, "geyser already has an extractor");
          } else {
            reserved_geysers_.insert(tid);
          }
          break;
        case Effect::kChrono:
          if (t->owner != player_ || !is_structure(tk) || !t->complete()) {
            invalid("is not a completed own structure");
          }
          break;
        case Effect::kInjectLarva:
          if (t->owner != player_ || tk.role != StructureRole::kHeadquarters || !t->complete()) {
            invalid("is not a completed own headquarters");
          }
          break;
        case Effect::kCallDownMule:
          if (tk.cls != UnitClass::kMineralField) invalid("is not a mineral field");
          break;
        case Effect::kRepair:
          if (t->owner != player_ || !(is_structure(tk) || tk.name == "SiegeTank") ||
              (action.units.size() == 1 && action.units[0] == tid)) {
            invalid("is not an own structure or mechanical unit");
          }
          break;
        default:
          break;
      }
    }
  }

  if (a->effect == Effect::kBuild && a->target == TargetKind::kPoint && signature_ok &&
      has_pos && state_.in_bounds(*action.target_position)) {
    const Cell c = *action.target_position;
    if (cell_blocked(state_, c) || reserved_cells_.count({c.x, c.y})) {
      fault(Fault::kPlacementBlocked, 0, "cell is occupied");
    } else {
      reserved_cells_.insert({c.x, c.y});
    }
    if (cat().kind(cat().kind_id(a->produces)).needs_power && !powered(state_, player_, c)) {
      fault(Fault::kUnpowered, 0, "no power field at the target position");
    }
  }
  if (a->effect == Effect::kBuildAddon) {
    for (const UnitId id : action.units) {
      const Unit* u = state_.find(id);
      if (u == nullptr || u->owner != player_) continue;
      const Cell c{u->pos.x + 1, u->pos.y};
      if (!state_.in_bounds(c) || cell_blocked(state_, c) || reserved_cells_.count({c.x, c.y})) {
        fault(Fault::kPlacementBlocked, id, "no room for the add-on");
      } else {
        reserved_cells_.insert({c.x, c.y});
      }
    }
  }
  if (a->effect == Effect::kResearch) {
    if (!reserved_research_.insert(a->tech).second) {
      fault(Fault::kResearchInProgress, 0, a->tech);
    }
  }

  if (a->effect == Effect::kBuild && me.faction == Faction::F2) {
    consumed_.insert(action.units.begin(), action.units.end());
  }

  const Cost c = cost_of(action);
  total_.minerals += c.minerals;
  total_.vespene += c.vespene;
  total_.supply += c.supply;
  return faults;
}

std::vector<ActionFault> BatchChecker::finish() const {
  constexpr auto kBatch = std::numeric_limits<std::size_t>::max();
  const PlayerState& me = state_.player(player_);
  std::vector<ActionFault> faults;
  if (total_.minerals > me.minerals) faults.push_back({Fault::kMinerals, kBatch, 0, ""});
  if (total_.vespene > me.vespene) faults.push_back({Fault::kVespene, kBatch, 0, ""});
  if (total_.supply > me.supply_unused) faults.push_back({Fault::kSupply, kBatch, 0, ""});
  return faults;
}

}  // namespace rtsarena::sim
