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

#include "rtsarena/sim/policy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rtsarena/common/rng.hpp"

namespace rtsarena::sim {
namespace {

const Catalog& cat() { return Catalog::get(); }

constexpr PolicyParams kLevels[7] = {
    // interval workers production attack focus tech abilities
    {64, 14, 1, 16, false, false, false},
    {48, 16, 1, 20, false, false, false},
    {32, 18, 2, 32, false, false, false},
    {24, 20, 2, 28, false, true, false},
    {16, 22, 3, 28, true, true, true},
    {12, 22, 3, 30, true, true, true},
    {8, 24, 4, 30, true, true, true},
};

struct FactionPlan {
  std::string_view train_worker;
  std::string_view build_supply;  // empty: supply comes from a larva unit
  std::string_view build_production;
  std::string_view production_kind;
  std::string_view build_extractor;
  std::string_view build_tech;  // point build or add-on ability
  std::string_view tech_kind;
  std::string_view basic_unit;
  std::string_view tech_unit;
};

const FactionPlan& plan_for(Faction f) {
  static const FactionPlan kF1{"COMMANDCENTERTRAIN_SCV", "TERRANBUILD_SUPPLYDEPOT",
                               "TERRANBUILD_BARRACKS",   "Barracks",
                               "TERRANBUILD_REFINERY",   "BUILD_TECHLAB_BARRACKS",
                               "BarracksTechLab",        "BARRACKSTRAIN_MARINE",
                               "BARRACKSTRAIN_MARAUDER"};
  static const FactionPlan kF2{"LARVATRAIN_DRONE",    "",
                               "ZERGBUILD_SPAWNINGPOOL", "SpawningPool",
                               "ZERGBUILD_EXTRACTOR",  "ZERGBUILD_ROACHWARREN",
                               "RoachWarren",          "LARVATRAIN_ZERGLING",
                               "LARVATRAIN_ROACH"};
  static const FactionPlan kF3{"NEXUSTRAIN_PROBE",        "PROTOSSBUILD_PYLON",
                               "PROTOSSBUILD_GATEWAY",    "Gateway",
                               "PROTOSSBUILD_ASSIMILATOR", "PROTOSSBUILD_CYBERNETICSCORE",
                               "CyberneticsCore",         "GATEWAYTRAIN_ZEALOT",
                               "GATEWAYTRAIN_STALKER"};
  switch (f) {
    case Faction::F1: return kF1;
    case Faction::F2: return kF2;
    case Faction::F3: return kF3;
  }
  return kF3;
}

bool is_army(const Unit& u) {
  const auto& k = kind_of(u);
  return k.cls == UnitClass::kArmy && k.damage > 0;
}

bool is_worker(const Unit& u) {
  return kind_of(u).cls == UnitClass::kWorker && u.expires_at < 0;
}

ActionRequest order(std::string_view ability, std::vector<UnitId> units,
                    std::optional<UnitId> target = std::nullopt,
                    std::optional<Cell> pos = std::nullopt) {
  return ActionRequest{std::string(ability), std::move(units), target, pos};
}

class Planner {
 public:
  Planner(const GameState& s, PlayerId p, const PolicyParams& params)
      : s_(s), p_(p), me_(s.player(p)), params_(params), plan_(plan_for(me_.faction)) {
    home_ = start_location(s.config, p);
    enemy_home_ = start_location(s.config, opponent(p));
    variant_ = derive_seed(s.config.seed, static_cast<std::uint64_t>(p)) % 3;
  }

  ActionBatch run() {
    if (variant_ == 1) extractor();
    supply();
    workers();
    if (variant_ == 2) army();
    production();
    tech();
    if (variant_ != 1) extractor();
    gas_workers();
    if (variant_ != 2) army();
    special_abilities();
    attack();
    if (params_.focus_fire) focus_fire();
    return out_;
  }

 private:
  int count_kind(std::string_view name, bool include_queued = false) const {
    int n = 0;
    for (const auto& [id, u] : s_.units) {
      if (u.owner != p_) continue;
      if (kind_of(u).name == name) ++n;
      if (include_queued) {
        for (const auto& item : u.queue) n += cat().ability(item.ability).produces == name;
      }
    }
    return n;
  }

  const Unit* headquarters() const {
    const Unit* best = nullptr;
    for (const auto& [id, u] : s_.units) {
      if (u.owner == p_ && u.complete() && kind_of(u).role == StructureRole::kHeadquarters &&
          (best == nullptr || dist2(u.pos, home_) < dist2(best->pos, home_))) {
        best = &u;
      }
    }
    return best;
  }

  bool usable(const Unit& u, std::string_view ability) const {
    const auto aid = cat().find_ability(me_.faction, ability);
    return aid && ability_usable(s_, u, cat().ability(*aid));
  }

  const Unit* free_worker() {
    for (const auto& [id, u] : s_.units) {
      if (u.owner != p_ || !is_worker(u) || busy_.count(id)) continue;
      if (u.order.kind == OrderKind::kIdle) return &u;
      if (u.order.kind == OrderKind::kGather) {
        const Unit* node = s_.find(u.order.target_unit);
        if (node && kind_of(*node).cls == UnitClass::kMineralField) return &u;
      }
    }
    return nullptr;
  }

  bool push(ActionRequest a) {
    const auto cost = BatchChecker(s_, p_).cost_of(a);
    if (cost.minerals > me_.minerals - spent_.minerals ||
        cost.vespene > me_.vespene - spent_.vespene ||
        cost.supply > me_.supply_unused - spent_.supply) {
      return false;
    }
    spent_.minerals += cost.minerals;
    spent_.vespene += cost.vespene;
    spent_.supply += cost.supply;
    for (UnitId id : a.units) busy_.insert(id);
    out_.push_back(std::move(a));
    return true;
  }

  bool cell_free(Cell c) const {
    if (!s_.in_bounds(c) || reserved_.count({c.x, c.y})) return false;
    for (const auto& [id, u] : s_.units) {
      if (is_mobile(kind_of(u))) continue;
      if (std::max(std::abs(u.pos.x - c.x), std::abs(u.pos.y - c.y)) <= 1) return false;
    }
    return true;
  }

  std::optional<Cell> site(bool needs_power, bool addon_room) {
    const int sx = home_.x < s_.config.map_width / 2 ? 1 : -1;
    const int sy = home_.y < s_.config.map_height / 2 ? 1 : -1;
    std::vector<Cell> cells;
    for (int dy = -10; dy <= 10; ++dy) {
      for (int dx = -10; dx <= 10; ++dx) {
        const int fx = dx * sx;
        const int fy = dy * sy;
        if (fx >= -1 && fy >= -1 && fx <= 5 && fy <= 5) continue;
        if (dx * dx + dy * dy > 100) continue;
        cells.push_back({home_.x + dx, home_.y + dy});
      }
    }
    std::sort(cells.begin(), cells.end(), [&](Cell a, Cell b) {
      const long da = dist2(a, home_), db = dist2(b, home_);
      if (da != db) return da < db;
      return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    for (const Cell c : cells) {
      if (!cell_free(c)) continue;
      if (needs_power && !powered(s_, p_, c)) continue;
      if (addon_room && !cell_free(Cell{c.x + 1, c.y})) continue;
      reserved_.insert({c.x, c.y});
      if (addon_room) reserved_.insert({c.x + 1, c.y});
      return c;
    }
    return std::nullopt;
  }

  void build(std::string_view ability) {
    const auto aid = cat().find_ability(me_.faction, ability);
    if (!aid) return;
    const auto& a = cat().ability(*aid);
    const Unit* w = free_worker();
    if (w == nullptr || !ability_usable(s_, *w, a)) return;
    if (a.target == TargetKind::kUnit) {
      const Unit* best = nullptr;
      for (const auto& [id, g] : s_.units) {
        if (kind_of(g).cls != UnitClass::kGeyser || !s_.visible(p_, g.pos)) continue;
        if (dist2(g.pos, home_) > kBaseRadius2) continue;
        bool taken = false;
        for (const auto& [eid, e] : s_.units) taken |= e.node == id;
        if (taken || reserved_geysers_.count(id)) continue;
        if (best == nullptr || dist2(g.pos, home_) < dist2(best->pos, home_)) best = &g;
      }
      if (best == nullptr) return;
      reserved_geysers_.insert(best->id);
      push(order(ability, {w->id}, best->id));
      return;
    }
    const auto& made = cat().kind(cat().kind_id(a.produces));
    const bool addon = !made.abilities.empty() &&
                       std::any_of(made.abilities.begin(), made.abilities.end(),
                                   [](const std::string& n) { return n.rfind("BUILD_TECHLAB", 0) == 0; });
    if (auto c = site(made.needs_power, addon)) push(order(ability, {w->id}, std::nullopt, *c));
  }

  int pending_supply() const {
    int n = 0;
    for (const auto& [id, u] : s_.units) {
      if (u.owner != p_) continue;
      if (!u.complete()) n += kind_of(u).supply_provided;
      for (const auto& item : u.queue) {
        const auto& a = cat().ability(item.ability);
        if (!a.produces.empty()) n += cat().kind(cat().kind_id(a.produces)).supply_provided;
      }
    }
    return n;
  }

  int producers() const { return count_kind(plan_.production_kind); }

  void supply() {
    if (me_.supply_cap + pending_supply() >= kSupplyLimit) return;
    const int margin = 2 + 2 * std::max(1, producers());
    if (me_.supply_unused + pending_supply() >= margin) return;
    if (pending_supply() > 0 && me_.supply_unused > 0) return;
    if (plan_.build_supply.empty()) {
      train_from_larva("LARVATRAIN_OVERLORD");
    } else {
      build(plan_.build_supply);
    }
  }

  bool train_from_larva(std::string_view ability) {
    for (const auto& [id, u] : s_.units) {
      if (u.owner == p_ && u.larva > 0 && !busy_.count(id) && usable(u, ability) &&
          u.queue.size() < kQueueCapacity) {
        return push(order(ability, {id}));
      }
    }
    return false;
  }

  void workers() {
    int n = 0;
    for (const auto& [id, u] : s_.units) n += u.owner == p_ && is_worker(u);
    for (const auto& [id, u] : s_.units) {
      if (u.owner != p_) continue;
      for (const auto& item : u.queue) {
        const auto& a = cat().ability(item.ability);
        n += a.effect != Effect::kResearch && !a.produces.empty() &&
             cat().kind(cat().kind_id(a.produces)).cls == UnitClass::kWorker;
      }
    }
    if (n >= params_.worker_target) return;
    if (me_.faction == Faction::F2) {
      train_from_larva(plan_.train_worker);
      return;
    }
    for (const auto& [id, u] : s_.units) {
      if (u.owner == p_ && kind_of(u).role == StructureRole::kHeadquarters && u.queue.empty() &&
          usable(u, plan_.train_worker) && !busy_.count(id)) {
        push(order(plan_.train_worker, {id}));
        return;
      }
    }
  }

  void production() {
    if (me_.faction == Faction::F2) {
      if (count_kind(plan_.production_kind) == 0) build(plan_.build_production);
      const int hatcheries = count_kind("Hatchery") + count_kind("Lair");
      if (hatcheries < params_.production_target && count_kind("SpawningPool") > 0 &&
          me_.minerals >= 300) {
        build("ZERGBUILD_HATCHERY");
      }
      return;
    }
    if (producers() < params_.production_target) build(plan_.build_production);
  }

  void tech() {
    if (!params_.tech || count_kind(plan_.tech_kind) > 0) return;
    if (me_.faction == Faction::F1) {
      for (const auto& [id, u] : s_.units) {
        if (u.owner == p_ && kind_of(u).name == "Barracks" && u.queue.empty() &&
            usable(u, plan_.build_tech) && !busy_.count(id)) {
          push(order(plan_.build_tech, {id}));
          return;
        }
      }
      return;
    }
    build(plan_.build_tech);
  }

  void extractor() {
    if (!params_.tech) return;
    int workers = 0;
    for (const auto& [id, u] : s_.units) workers += u.owner == p_ && is_worker(u);
    if (workers < 15) return;
    const auto ext_kind = cat().kind(cat().extractor(me_.faction)).name;
    if (count_kind(ext_kind) > 0) return;
    build(plan_.build_extractor);
  }

  void gas_workers() {
    for (const auto& [id, e] : s_.units) {
      if (e.owner != p_ || kind_of(e).role != StructureRole::kExtractor || !e.complete()) continue;
      int missing = kind_of(e).harvester_capacity - harvesters(s_, e).current;
      while (missing-- > 0) {
        const Unit* w = free_worker();
        if (w == nullptr) return;
        push(order("HARVEST_GATHER", {w->id}, id));
      }
    }
  }

  void army() {
    const bool parallel = params_.production_target >= 3;
    const std::size_t depth = parallel ? 2 : 1;
    if (me_.faction == Faction::F2) {
      if (count_kind("SpawningPool") == 0) return;
      for (int guard = 0; guard < 6; ++guard) {
        if (me_.supply_unused <= 1) return;
        const bool roach = params_.tech && count_kind("RoachWarren") > 0 && me_.vespene >= 25;
        if (!train_from_larva(roach ? plan_.tech_unit : plan_.basic_unit)) return;
      }
      return;
    }
    for (const auto& [id, u] : s_.units) {
      if (u.owner != p_ || kind_of(u).name != plan_.production_kind || !u.complete()) continue;
      if (u.queue.size() >= depth || busy_.count(id)) continue;
      if (params_.tech && usable(u, plan_.tech_unit) && me_.vespene >= 50) {
        push(order(plan_.tech_unit, {id}));
      } else if (usable(u, plan_.basic_unit)) {
        push(order(plan_.basic_unit, {id}));
      }
    }
  }

  void special_abilities() {
    if (!params_.abilities) return;
    const Unit* hq = headquarters();
    if (hq == nullptr) return;
    switch (me_.faction) {
      case Faction::F3:
        if (hq->energy.current >= 50 && !busy_.count(hq->id)) {
          const Unit* target = nullptr;
          for (const auto& [id, u] : s_.units) {
            if (u.owner == p_ && is_structure(kind_of(u)) && u.complete() && !u.queue.empty() &&
                u.chrono_until <= s_.tick) {
              target = &u;
              break;
            }
          }
          if (target) push(order("EFFECT_CHRONOBOOSTENERGYCOST", {hq->id}, target->id));
        }
        break;
      case Faction::F1:
        if (kind_of(*hq).name == "CommandCenter" && usable(*hq, "UPGRADETOORBITAL_ORBITALCOMMAND") &&
            hq->queue.empty() && !busy_.count(hq->id) && me_.minerals >= 150) {
          push(order("UPGRADETOORBITAL_ORBITALCOMMAND", {hq->id}));
        } else if (hq->energy.current >= 50 && !busy_.count(hq->id)) {
          const Unit* field = nullptr;
          for (const auto& [id, m] : s_.units) {
            if (kind_of(m).cls == UnitClass::kMineralField && s_.visible(p_, m.pos) &&
                dist2(m.pos, hq->pos) <= kBaseRadius2) {
              field = &m;
              break;
            }
          }
          if (field) push(order("CALLDOWNMULE_CALLDOWNMULE", {hq->id}, field->id));
        }
        break;
      case Faction::F2: {
        if (count_kind("Queen", true) == 0 && usable(*hq, "TRAINQUEEN_QUEEN") &&
            hq->queue.size() < kQueueCapacity && !busy_.count(hq->id)) {
          push(order("TRAINQUEEN_QUEEN", {hq->id}));
        }
        for (const auto& [id, q] : s_.units) {
          if (q.owner == p_ && kind_of(q).name == "Queen" && q.energy.current >= 25) {
            push(order("EFFECT_INJECTLARVA", {id}, hq->id));
            break;
          }
        }
        break;
      }
    }
  }

  const Unit* enemy_near(Cell c, long radius2) const {
    const Unit* best = nullptr;
    for (const auto& [id, e] : s_.units) {
      if (e.owner != opponent(p_) || !s_.visible(p_, e.pos)) continue;
      if (dist2(e.pos, c) > radius2) continue;
      if (best == nullptr || dist2(e.pos, c) < dist2(best->pos, c)) best = &e;
    }
    return best;
  }

  void attack() {
    std::vector<UnitId> idle;
    std::vector<UnitId> forward;
    int idle_supply = 0;
    bool campaign = false;
    for (const auto& [id, u] : s_.units) {
      if (u.owner != p_ || !is_army(u) || kind_of(u).name == "Queen") continue;
      if (u.order.kind == OrderKind::kAttack && u.order.target_pos) campaign = true;
      if (u.order.kind != OrderKind::kIdle || busy_.count(id)) continue;
      if (dist2(u.pos, home_) > dist2(u.pos, enemy_home_)) {
        forward.push_back(id);
      } else {
        idle.push_back(id);
        idle_supply += kind_of(u).supply_cost;
      }
    }
    if (const Unit* raider = enemy_near(home_, 12 * 12); raider && !idle.empty()) {
      push(order("ATTACK_ATTACK", idle, std::nullopt, raider->pos));
      idle.clear();
    }
    const int wave = campaign ? params_.attack_supply / 2 : params_.attack_supply;
    if (idle_supply >= wave) forward.insert(forward.end(), idle.begin(), idle.end());
    if (forward.empty()) return;
    std::sort(forward.begin(), forward.end());
    Cell target = enemy_home_;
    const Unit* structure = nullptr;
    for (const auto& [id, e] : s_.units) {
      if (e.owner != opponent(p_) || !is_structure(kind_of(e)) || !s_.visible(p_, e.pos)) continue;
      if (structure == nullptr || dist2(e.pos, home_) < dist2(structure->pos, home_)) structure = &e;
    }
    if (structure) {
      target = structure->pos;
    } else {
      bool arrived = false;
      for (UnitId id : forward) arrived |= dist2(s_.find(id)->pos, enemy_home_) <= 25;
      if (arrived) {
        const auto n = static_cast<int>(s_.tick / params_.act_interval) % 2;
        target = n == 0 ? Cell{enemy_home_.x, home_.y} : Cell{home_.x, enemy_home_.y};
      }
    }
    push(order("ATTACK_ATTACK", forward, std::nullopt, target));
  }

  void focus_fire() {
    std::map<UnitId, std::vector<UnitId>> retarget;
    for (const auto& [id, u] : s_.units) {
      if (u.owner != p_ || !is_army(u) || busy_.count(id) || u.order.kind != OrderKind::kAttack) {
        continue;
      }
      const long r = 2L * kind_of(u).range + 1;
      const Unit* weakest = nullptr;
      for (const auto& [eid, e] : s_.units) {
        if (e.owner != opponent(p_) || !s_.visible(p_, e.pos)) continue;
        if (4 * dist2(u.pos, e.pos) > r * r) continue;
        if (weakest == nullptr || e.health.current < weakest->health.current) weakest = &e;
      }
      if (weakest && weakest->id != u.order.target_unit) retarget[weakest->id].push_back(id);
    }
    for (auto& [target, units] : retarget) push(order("ATTACK_ATTACK", units, target));
  }

  const GameState& s_;
  PlayerId p_;
  const PlayerState& me_;
  PolicyParams params_;
  const FactionPlan& plan_;
  Cell home_;
  Cell enemy_home_;
  std::uint64_t variant_ = 0;
  ActionBatch out_;
  std::set<UnitId> busy_;
  std::set<std::pair<int, int>> reserved_;
  std::set<UnitId> reserved_geysers_;
  BatchChecker::Cost spent_;
};

}  // namespace

PolicyParams builtin_params(int level) {
  if (level < 1 || level > 7) throw std::invalid_argument("builtin level must be in 1..7");
  return kLevels[level - 1];
}

ActionBatch auto_micro(const GameState& s, PlayerId p) {
  ActionBatch out;
  const PlayerState& me = s.player(p);
  std::vector<const Unit*> idle_workers;
  std::vector<const Unit*> idle_army;
  std::map<UnitId, int> load;
  for (const auto& [id, u] : s.units) {
    if (u.owner != p) continue;
    if (is_worker(u) && u.order.kind == OrderKind::kGather) ++load[u.order.target_unit];
    if (u.order.kind != OrderKind::kIdle) continue;
    if (is_worker(u)) idle_workers.push_back(&u);
    if (is_army(u)) idle_army.push_back(&u);
  }

  if (!idle_workers.empty()) {
    std::vector<const Unit*> minerals, gas;
    for (const auto& [id, n] : s.units) {
      const auto& k = kind_of(n);
      if (k.cls == UnitClass::kMineralField && n.resource > 0 && s.visible(p, n.pos)) {
        minerals.push_back(&n);
      } else if (n.owner == p && k.role == StructureRole::kExtractor && n.complete()) {
        gas.push_back(&n);
      }
    }
    const bool prefer_gas = me.vespene * 2 < me.minerals;
    std::map<UnitId, std::vector<UnitId>> assign;
    for (const Unit* w : idle_workers) {
      auto nearest = [&](const std::vector<const Unit*>& nodes) -> const Unit* {
        const Unit* best = nullptr;
        for (const Unit* n : nodes) {
          if (load[n->id] >= kind_of(*n).harvester_capacity) continue;
          if (best == nullptr || dist2(n->pos, w->pos) < dist2(best->pos, w->pos)) best = n;
        }
        return best;
      };
      const Unit* node = prefer_gas ? nearest(gas) : nearest(minerals);
      if (node == nullptr) node = prefer_gas ? nearest(minerals) : nearest(gas);
      if (node == nullptr) continue;
      ++load[node->id];
      assign[node->id].push_back(w->id);
    }
    for (auto& [node, units] : assign) {
      out.push_back(ActionRequest{"HARVEST_GATHER", std::move(units), node, std::nullopt});
    }
  }

  std::map<UnitId, std::vector<UnitId>> targets;
  for (const Unit* u : idle_army) {
    const long sight2 = static_cast<long>(kind_of(*u).sight) * kind_of(*u).sight;
    const Unit* weakest = nullptr;
    for (const auto& [id, e] : s.units) {
      if (e.owner != opponent(p) || !s.visible(p, e.pos) || dist2(e.pos, u->pos) > sight2) continue;
      if (weakest == nullptr || e.health.current < weakest->health.current) weakest = &e;
    }
    if (weakest) targets[weakest->id].push_back(u->id);
  }
  for (auto& [target, units] : targets) {
    out.push_back(ActionRequest{"ATTACK_ATTACK", std::move(units), target, std::nullopt});
  }
  return out;
}

void merge_uncommanded(ActionBatch& base, const ActionBatch& extra) {
  std::set<UnitId> used;
  for (const auto& a : base) used.insert(a.units.begin(), a.units.end());
  for (const auto& a : extra) {
    ActionRequest copy = a;
    std::erase_if(copy.units, [&](UnitId id) { return used.count(id) > 0; });
    if (copy.units.empty()) continue;
    used.insert(copy.units.begin(), copy.units.end());
    base.push_back(std::move(copy));
  }
}

ActionBatch filter_valid(const GameState& s, PlayerId p, const ActionBatch& batch) {
  ActionBatch kept;
  BatchChecker checker(s, p);
  const PlayerState& me = s.player(p);
  int minerals = me.minerals, vespene = me.vespene, supply = me.supply_unused;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto faults = checker.check(batch[i], i);
    const auto cost = checker.cost_of(batch[i]);
    if (!faults.empty() || cost.minerals > minerals || cost.vespene > vespene ||
        cost.supply > supply) {
      continue;
    }
    minerals -= cost.minerals;
    vespene -= cost.vespene;
    supply -= cost.supply;
    kept.push_back(batch[i]);
  }
  return kept;
}

ActionBatch policy_with_params(const GameState& s, PlayerId p, const PolicyParams& params) {
  if (s.tick % params.act_interval != 0) return {};
  ActionBatch batch = Planner(s, p, params).run();
  merge_uncommanded(batch, auto_micro(s, p));
  return filter_valid(s, p, batch);
}

ActionBatch builtin_policy(const GameState& s, PlayerId p, int level) {
  return policy_with_params(s, p, builtin_params(level));
}

}  // namespace rtsarena::sim
