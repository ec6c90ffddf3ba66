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
#include <cstdlib>

#include "rtsarena/common/digest.hpp"
#include "rtsarena/common/rng.hpp"
#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::sim {
namespace {

const Catalog& cat() { return Catalog::get(); }

constexpr int kMineralTrip = 80;
constexpr int kMineralLoad = 5;
constexpr int kGasTrip = 64;
constexpr int kGasLoad = 4;
constexpr int kMuleTrip = 64;
constexpr int kMuleLoad = 25;
constexpr int kMuleLifetime = 64 * 16;
constexpr int kChronoTicks = 320;
constexpr int kLarvaPeriod = 176;
constexpr int kLarvaMax = 3;
constexpr int kInjectLarva = 3;
constexpr int kEnergyPeriod = 28;
constexpr int kShieldPeriod = 8;
constexpr int kShieldDelay = 160;
constexpr int kStuckLimit = 48;
constexpr long kRecallRadius2 = 42;

bool adjacent(Cell a, Cell b) { return dist2(a, b) <= 2; }

bool in_range(const Unit& shooter, const Unit& target) {
  const long r = 2L * kind_of(shooter).range + 1;
  return 4 * dist2(shooter.pos, target.pos) <= r * r;
}

class Stepper {
 public:
  Stepper(GameState& s, StepResult& r) : s_(s), r_(r) {}

  void emit(EventType type, PlayerId p, UnitId unit, int minerals = 0, int vespene = 0,
            std::string detail = {}) {
    r_.events.push_back(Event{s_.tick, type, p, unit, minerals, vespene, std::move(detail)});
  }

  Unit& spawn(KindId kind, PlayerId owner, Cell pos) {
    const auto& k = cat().kind(kind);
    Unit u;
    u.id = s_.next_id++;
    u.kind = kind;
    u.owner = owner;
    u.pos = pos;
    u.health = {k.max_health, k.max_health};
    u.shield = {k.max_shield, k.max_shield};
    u.energy = {k.start_energy, k.max_energy};
    u.resource = k.resource_amount;
    return s_.units.emplace(u.id, u).first->second;
  }

  std::vector<std::uint8_t> blocked_grid() const {
    const auto w = static_cast<std::size_t>(s_.config.map_width);
    std::vector<std::uint8_t> grid(w * static_cast<std::size_t>(s_.config.map_height), 0);
    for (const auto& [id, u] : s_.units) {
      if (!is_mobile(kind_of(u)) && s_.in_bounds(u.pos)) {
        grid[static_cast<std::size_t>(u.pos.y) * w + static_cast<std::size_t>(u.pos.x)] = 1;
      }
    }
    return grid;
  }

  Cell exit_cell(const Unit& from) const {
    const auto grid = blocked_grid();
    const int mx = s_.config.map_width / 2 > from.pos.x ? 1 : -1;
    const int my = s_.config.map_height / 2 > from.pos.y ? 1 : -1;
    for (int ring = 1; ring <= 3; ++ring) {
      for (int dy = -ring; dy <= ring; ++dy) {
        for (int dx = -ring; dx <= ring; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          const Cell c{from.pos.x + dx * mx, from.pos.y + dy * my};
          if (s_.in_bounds(c) && !grid[static_cast<std::size_t>(c.y) * s_.config.map_width +
                                       static_cast<std::size_t>(c.x)]) {
            return c;
          }
        }
      }
    }
    return from.pos;
  }

  void remove(UnitId id, EventType why, std::string detail = {}) {
    Unit* u = s_.find(id);
    if (u == nullptr) return;
    emit(why, u->owner, id, 0, 0, std::move(detail));
    if (u->addon) {
      if (Unit* a = s_.find(u->addon)) a->attached_to = 0;
    }
    if (u->attached_to) {
      if (Unit* h = s_.find(u->attached_to)) h->addon = 0;
    }
    s_.units.erase(id);
  }

  void apply(PlayerId p, const ActionRequest& action) {
    PlayerState& me = s_.player(p);
    const auto& a = cat().ability(*cat().find_ability(me.faction, action.action));
    const auto cost = BatchChecker(s_, p).cost_of(action);
    if (cost.minerals || cost.vespene) {
      me.minerals -= cost.minerals;
      me.vespene -= cost.vespene;
      emit(EventType::kCost, p, action.units.empty() ? 0 : action.units.front(), cost.minerals,
           cost.vespene, a.name);
    }
    for (const UnitId id : action.units) {
      Unit* u = s_.find(id);
      if (u == nullptr) continue;
      if (a.energy > 0) u->energy.current -= a.energy;
      apply_one(p, *u, a, action);
    }
  }

  void apply_one(PlayerId p, Unit& u, const AbilityDef& a, const ActionRequest& action) {
    switch (a.effect) {
      case Effect::kMove:
      case Effect::kAttack:
      case Effect::kGather:
      case Effect::kRepair: {
        Order o;
        o.kind = a.effect == Effect::kMove     ? OrderKind::kMove
                 : a.effect == Effect::kAttack ? OrderKind::kAttack
                 : a.effect == Effect::kGather ? OrderKind::kGather
                                               : OrderKind::kRepair;
        o.target_unit = action.target_unit.value_or(0);
        o.target_pos = action.target_position;
        u.order = o;
        u.gather_timer = 0;
        break;
      }
      case Effect::kBuild: {
        const KindId kid = cat().kind_id(a.produces);
        Cell at = action.target_position.value_or(Cell{});
        UnitId node = 0;
        if (action.target_unit) {
          node = *action.target_unit;
          at = s_.find(node)->pos;
        }
        Unit& b = spawn(kid, p, at);
        b.node = node;
        b.build_total = cat().kind(kid).build_time;
        const UnitId bid = b.id;
        emit(EventType::kConstructionStarted, p, bid, 0, 0, a.produces);
        switch (s_.player(p).faction) {
          case Faction::F1:
            u.order = Order{OrderKind::kConstruct, bid, std::nullopt, 0};
            break;
          case Faction::F2:
            remove(u.id, EventType::kDied, "morphed");
            break;
          case Faction::F3:
            u.order = Order{};
            break;
        }
        break;
      }
      case Effect::kTrain:
      case Effect::kTrainLarva: {
        if (a.effect == Effect::kTrainLarva) --u.larva;
        int total = cat().kind(cat().kind_id(a.produces)).build_time * 2;
        if (kind_of(u).name == "Gateway" && s_.player(p).has_tech("WarpGate")) {
          total = total * 4 / 5;
        }
        u.queue.push_back(ProductionItem{*cat().find_ability(s_.player(p).faction, a.name), 0,
                                         total});
        break;
      }
      case Effect::kResearch:
        u.queue.push_back(ProductionItem{*cat().find_ability(s_.player(p).faction, a.name), 0,
                                         a.research_time * 2});
        break;
      case Effect::kMorph:
        u.queue.push_back(ProductionItem{*cat().find_ability(s_.player(p).faction, a.name), 0,
                                         cat().kind(cat().kind_id(a.produces)).build_time * 2});
        break;
      case Effect::kBuildAddon: {
        const KindId kid = cat().kind_id(a.produces);
        Unit& lab = spawn(kid, p, Cell{u.pos.x + 1, u.pos.y});
        lab.build_total = cat().kind(kid).build_time;
        lab.attached_to = u.id;
        u.addon = lab.id;
        emit(EventType::kConstructionStarted, p, lab.id, 0, 0, a.produces);
        break;
      }
      case Effect::kChrono:
        if (Unit* t = s_.find(*action.target_unit)) t->chrono_until = s_.tick + kChronoTicks;
        break;
      case Effect::kInjectLarva:
        if (Unit* t = s_.find(*action.target_unit)) t->larva += kInjectLarva;
        break;
      case Effect::kCallDownMule: {
        const Unit* field = s_.find(*action.target_unit);
        Unit& m = spawn(cat().kind_id("MULE"), p, exit_cell(*field));
        m.order = Order{OrderKind::kGather, field->id, std::nullopt, 0};
        m.expires_at = s_.tick + kMuleLifetime;
        emit(EventType::kSpawned, p, m.id, 0, 0, "MULE");
        break;
      }
      case Effect::kMassRecall: {
        const Cell c = *action.target_position;
        for (auto& [id, v] : s_.units) {
          if (v.owner == p && is_mobile(kind_of(v)) && dist2(v.pos, c) <= kRecallRadius2) {
            v.pos = exit_cell(u);
            v.order = Order{};
          }
        }
        break;
      }
    }
  }

  void construction() {
    std::vector<UnitId> done;
    for (auto& [id, u] : s_.units) {
      if (u.complete() || u.owner == kNeutral) continue;
      if (s_.player(u.owner).faction == Faction::F1 && !u.attached_to && !builder_present(u)) {
        continue;
      }
      if (++u.build_progress >= u.build_total) done.push_back(id);
    }
    for (const UnitId id : done) {
      Unit& u = s_.units.at(id);
      emit(EventType::kCompleted, u.owner, id, 0, 0, kind_of(u).name);
      for (auto& [wid, w] : s_.units) {
        if (w.order.kind == OrderKind::kConstruct && w.order.target_unit == id) w.order = Order{};
      }
    }
  }

  bool builder_present(const Unit& site) const {
    for (const auto& [id, w] : s_.units) {
      if (w.owner == site.owner && w.order.kind == OrderKind::kConstruct &&
          w.order.target_unit == site.id && adjacent(w.pos, site.pos)) {
        return true;
      }
    }
    return false;
  }

  void production() {
    std::vector<UnitId> ids;
    for (const auto& [id, u] : s_.units) {
      if (!u.queue.empty()) ids.push_back(id);
    }
    for (const UnitId id : ids) {
      Unit* host = s_.find(id);
      if (host == nullptr) continue;
      const int rate = s_.tick < host->chrono_until ? 3 : 2;
      const bool parallel = s_.player(host->owner).faction == Faction::F2 &&
                            kind_of(*host).role == StructureRole::kHeadquarters;
      std::vector<ProductionItem> finished;
      if (parallel) {
        for (auto& item : host->queue) item.progress += rate;
      } else {
        host->queue.front().progress += rate;
      }
      auto it = host->queue.begin();
      while (it != host->queue.end()) {
        if (it->progress >= it->total) {
          finished.push_back(*it);
          it = host->queue.erase(it);
        } else {
          ++it;
        }
      }
      for (const auto& item : finished) finish_item(host->id, item);
    }
  }

  void finish_item(UnitId host_id, const ProductionItem& item) {
    const auto& a = cat().ability(item.ability);
    Unit& host = s_.units.at(host_id);
    const PlayerId p = host.owner;
    switch (a.effect) {
      case Effect::kTrain:
      case Effect::kTrainLarva: {
        const Cell at = exit_cell(host);
        Unit& u = spawn(cat().kind_id(a.produces), p, at);
        emit(EventType::kSpawned, p, u.id, 0, 0, a.produces);
        break;
      }
      case Effect::kResearch: {
        auto& tech = s_.player(p).tech;
        tech.insert(std::upper_bound(tech.begin(), tech.end(), a.tech), a.tech);
        emit(EventType::kResearched, p, host_id, 0, 0, a.tech);
        break;
      }
      case Effect::kMorph: {
        const KindId kid = cat().kind_id(a.produces);
        const auto& k = cat().kind(kid);
        host.kind = kid;
        host.health = {k.max_health, k.max_health};
        if (host.energy.max == 0) host.energy = {k.start_energy, k.max_energy};
        emit(EventType::kCompleted, p, host_id, 0, 0, a.produces);
        break;
      }
      default:
        break;
    }
  }

  void regeneration() {
    const int t = s_.tick;
    std::vector<UnitId> expired;
    for (auto& [id, u] : s_.units) {
      if (u.energy.max > 0 && u.complete() && t % kEnergyPeriod == 0 &&
          u.energy.current < u.energy.max) {
        ++u.energy.current;
      }
      if (u.shield.max > 0 && t - u.last_damaged_tick >= kShieldDelay && t % kShieldPeriod == 0 &&
          u.shield.current < u.shield.max) {
        ++u.shield.current;
      }
      if (kind_of(u).role == StructureRole::kHeadquarters &&
          s_.player(u.owner).faction == Faction::F2 && u.complete()) {
        if (u.larva < kLarvaMax) {
          if (++u.larva_timer >= kLarvaPeriod) {
            ++u.larva;
            u.larva_timer = 0;
          }
        } else {
          u.larva_timer = 0;
        }
      }
      if (u.expires_at >= 0 && t >= u.expires_at) expired.push_back(id);
    }
    for (const UnitId id : expired) remove(id, EventType::kExpired);
  }

  // Greedy single-cell step; the order is dropped after kStuckLimit fruitless ticks.
  void step_toward(Unit& u, Cell goal, bool stop_adjacent) {
    if (u.move_cooldown > 0) return;
    const long here = dist2(u.pos, goal);
    if (here == 0 || (stop_adjacent && here <= 2)) return;
    Cell best = u.pos;
    long best_d = here;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell c{u.pos.x + dx, u.pos.y + dy};
        if (!s_.in_bounds(c) || blocked_[static_cast<std::size_t>(c.y) * s_.config.map_width +
                                         static_cast<std::size_t>(c.x)]) {
          continue;
        }
        const long d = dist2(c, goal);
        if (d < best_d) {
          best = c;
          best_d = d;
        }
      }
    }
    if (best == u.pos) {
      if (++u.order.stuck_ticks >= kStuckLimit) u.order = Order{};
      return;
    }
    u.pos = best;
    u.order.stuck_ticks = 0;
    u.move_cooldown = kind_of(u).move_period;
  }

  const Unit* nearest_enemy(const Unit& u, long radius2) const {
    const Unit* best = nullptr;
    long best_d = 0;
    for (const auto& [id, e] : s_.units) {
      if (e.owner != opponent(u.owner) || e.owner == kNeutral) continue;
      if (!s_.visible(u.owner, e.pos)) continue;
      const long d = dist2(u.pos, e.pos);
      if (d > radius2) continue;
      if (best == nullptr || d < best_d) {
        best = &e;
        best_d = d;
      }
    }
    return best;
  }

  void fire(Unit& u, const Unit& target) {
    if (u.weapon_cooldown > 0) return;
    hits_.emplace_back(target.id, kind_of(u).damage);
    u.weapon_cooldown = kind_of(u).cooldown;
  }

  void orders() {
    blocked_ = blocked_grid();
    for (auto& [id, u] : s_.units) {
      if (u.move_cooldown > 0) --u.move_cooldown;
      if (u.weapon_cooldown > 0) --u.weapon_cooldown;
    }
    for (auto& [id, u] : s_.units) {
      if (u.owner == kNeutral) continue;
      const auto& k = kind_of(u);
      if (!is_mobile(k)) continue;
      Order& o = u.order;
      switch (o.kind) {
        case OrderKind::kIdle:
          if (k.damage > 0 && k.cls == UnitClass::kArmy) {
            const long reach = static_cast<long>(k.range) * k.range + k.range;
            if (const Unit* e = nearest_enemy(u, reach); e && in_range(u, *e)) fire(u, *e);
          }
          break;
        case OrderKind::kMove:
          if (o.target_unit) {
            const Unit* t = s_.find(o.target_unit);
            if (t == nullptr || (t->owner != u.owner && !s_.visible(u.owner, t->pos))) {
              o = Order{};
              break;
            }
            if (adjacent(u.pos, t->pos)) {
              o = Order{};
              break;
            }
            step_toward(u, t->pos, true);
          } else if (o.target_pos) {
            if (u.pos == *o.target_pos) {
              o = Order{};
              break;
            }
            step_toward(u, *o.target_pos, blocked_at(*o.target_pos));
            if (blocked_at(*o.target_pos) && adjacent(u.pos, *o.target_pos)) o = Order{};
          }
          break;
        case OrderKind::kAttack:
          attack(u);
          break;
        case OrderKind::kGather:
          gather(u);
          break;
        case OrderKind::kConstruct: {
          const Unit* site = s_.find(o.target_unit);
          if (site == nullptr || site->complete()) {
            o = Order{};
            break;
          }
          step_toward(u, site->pos, true);
          break;
        }
        case OrderKind::kRepair: {
          Unit* t = s_.find(o.target_unit);
          if (t == nullptr || t->health.current >= t->health.max) {
            o = Order{};
            break;
          }
          if (adjacent(u.pos, t->pos)) {
            ++t->health.current;
          } else {
            step_toward(u, t->pos, true);
          }
          break;
        }
      }
    }
    collect_income();
  }

  bool blocked_at(Cell c) const {
    return s_.in_bounds(c) &&
           blocked_[static_cast<std::size_t>(c.y) * s_.config.map_width +
                    static_cast<std::size_t>(c.x)] != 0;
  }

  void attack(Unit& u) {
    Order& o = u.order;
    const auto& k = kind_of(u);
    if (k.damage == 0) {
      o = Order{};
      return;
    }
    const Unit* t = o.target_unit ? s_.find(o.target_unit) : nullptr;
    if (t != nullptr && !s_.visible(u.owner, t->pos)) t = nullptr;
    if (t == nullptr && o.target_pos) {
      t = nearest_enemy(u, static_cast<long>(k.sight) * k.sight);
      o.target_unit = t ? t->id : 0;
    }
    if (t == nullptr) {
      if (!o.target_pos) {
        o = Order{};
        return;
      }
      if (u.pos == *o.target_pos) {
        o = Order{};
        return;
      }
      step_toward(u, *o.target_pos, blocked_at(*o.target_pos));
      return;
    }
    if (in_range(u, *t)) {
      fire(u, *t);
    } else {
      step_toward(u, t->pos, true);
    }
  }

  void gather(Unit& u) {
    const Unit* node = s_.find(u.order.target_unit);
    if (node == nullptr) {
      u.order = Order{};
      return;
    }
    if (!adjacent(u.pos, node->pos)) {
      step_toward(u, node->pos, true);
      return;
    }
    ++u.gather_timer;
  }

  void collect_income() {
    std::vector<UnitId> depleted;
    const KindId mule_kind = cat().kind_id("MULE");
    for (auto& [id, u] : s_.units) {
      if (u.order.kind != OrderKind::kGather || u.gather_timer == 0) continue;
      Unit* node = s_.find(u.order.target_unit);
      if (node == nullptr || !adjacent(u.pos, node->pos)) continue;
      const bool mule = u.kind == mule_kind;
      const bool gas = kind_of(*node).role == StructureRole::kExtractor;
      if (!mule) {
        const int cap = kind_of(*node).harvester_capacity;
        if (!gatherer_admitted(u, *node, cap)) {
          u.gather_timer = 0;
          continue;
        }
      }
      const int trip = mule ? kMuleTrip : gas ? kGasTrip : kMineralTrip;
      if (u.gather_timer < trip) continue;
      u.gather_timer = 0;
      Unit* source = gas ? s_.find(node->node) : node;
      if (source == nullptr || source->resource <= 0) continue;
      const int load = std::min(source->resource, mule ? kMuleLoad : gas ? kGasLoad : kMineralLoad);
      source->resource -= load;
      PlayerState& me = s_.player(u.owner);
      if (gas) {
        me.vespene += load;
        emit(EventType::kIncome, u.owner, id, 0, load);
      } else {
        me.minerals += load;
        emit(EventType::kIncome, u.owner, id, load, 0);
      }
      if (source->resource <= 0 && !gas) depleted.push_back(source->id);
    }
    std::sort(depleted.begin(), depleted.end());
    depleted.erase(std::unique(depleted.begin(), depleted.end()), depleted.end());
    for (const UnitId id : depleted) remove(id, EventType::kExpired, "depleted");
  }

  // The first `cap` adjacent gatherers by id work the node; the rest wait.
  bool gatherer_admitted(const Unit& w, const Unit& node, int cap) const {
    int rank = 0;
    const KindId mule_kind = cat().kind_id("MULE");
    for (const auto& [id, o] : s_.units) {
      if (id >= w.id) break;
      if (o.kind != mule_kind && o.owner == w.owner && o.order.kind == OrderKind::kGather &&
          o.order.target_unit == node.id && adjacent(o.pos, node.pos)) {
        ++rank;
      }
    }
    return rank < cap;
  }

  void damage() {
    std::sort(hits_.begin(), hits_.end());
    for (const auto& [target, amount] : hits_) {
      Unit* t = s_.find(target);
      if (t == nullptr) continue;
      int left = amount;
      const int absorbed = std::min(left, t->shield.current);
      t->shield.current -= absorbed;
      left -= absorbed;
      t->health.current = std::max(0, t->health.current - left);
      t->last_damaged_tick = s_.tick;
    }
    hits_.clear();
  }

  void deaths() {
    std::vector<UnitId> dead;
    for (const auto& [id, u] : s_.units) {
      if (u.owner != kNeutral && u.health.current <= 0) dead.push_back(id);
    }
    for (const UnitId id : dead) remove(id, EventType::kDied);
  }

 private:
  GameState& s_;
  StepResult& r_;
  std::vector<std::uint8_t> blocked_;
  std::vector<std::pair<UnitId, int>> hits_;
};

void recompute_supply(GameState& s) {
  for (PlayerId p = 1; p <= 2; ++p) {
    PlayerState& ps = s.player(p);
    ps.supply_army = ps.supply_workers = ps.supply_cap = 0;
  }
  for (const auto& [id, u] : s.units) {
    if (u.owner == kNeutral) continue;
    PlayerState& ps = s.player(u.owner);
    const auto& k = kind_of(u);
    if (u.complete()) ps.supply_cap += k.supply_provided;
    (k.cls == UnitClass::kWorker ? ps.supply_workers : ps.supply_army) += k.supply_cost;
    for (const auto& item : u.queue) {
      const auto& a = cat().ability(item.ability);
      if (a.effect != Effect::kTrain && a.effect != Effect::kTrainLarva) continue;
      const auto& made = cat().kind(cat().kind_id(a.produces));
      (made.cls == UnitClass::kWorker ? ps.supply_workers : ps.supply_army) += made.supply_cost;
    }
  }
  for (PlayerId p = 1; p <= 2; ++p) {
    PlayerState& ps = s.player(p);
    ps.supply_cap = std::min(ps.supply_cap, kSupplyLimit);
    ps.supply_unused = std::max(0, ps.supply_cap - ps.supply_army - ps.supply_workers);
  }
}

void recompute_fog(GameState& s) {
  const int w = s.config.map_width;
  const int h = s.config.map_height;
  for (auto& mask : s.fog) mask.assign(static_cast<std::size_t>(w) * h, 0);
  for (const auto& [id, u] : s.units) {
    if (u.owner == kNeutral) continue;
    auto& mask = s.fog[static_cast<std::size_t>(u.owner - 1)];
    const int r = kind_of(u).sight;
    for (int y = std::max(0, u.pos.y - r); y <= std::min(h - 1, u.pos.y + r); ++y) {
      for (int x = std::max(0, u.pos.x - r); x <= std::min(w - 1, u.pos.x + r); ++x) {
        if (dist2(u.pos, Cell{x, y}) <= static_cast<long>(r) * r) {
          mask[static_cast<std::size_t>(y) * w + x] = 1;
        }
      }
    }
  }
}

// Corner frame: +x/+y point from the base corner toward the map centre.
struct Frame {
  Cell origin;
  int sx = 1;
  int sy = 1;
  Cell at(int dx, int dy) const { return {origin.x + sx * dx, origin.y + sy * dy}; }
};

constexpr std::pair<int, int> kMineralOffsets[] = {{4, -1}, {4, 0}, {4, 1}, {4, 2},
                                                   {-1, 4}, {0, 4}, {1, 4}, {2, 4}};
constexpr std::pair<int, int> kGeyserOffsets[] = {{-4, 4}, {4, -4}};
constexpr std::pair<int, int> kWorkerOffsets[] = {{1, 0}, {0, 1}, {1, 1}, {2, 0},
                                                  {0, 2}, {2, 1}, {1, 2}, {2, 2},
                                                  {3, 0}, {0, 3}, {3, 1}, {1, 3}};

}  // namespace

Cell start_location(const MatchConfig& config, PlayerId player) {
  const int bx = std::max(4, config.map_width / 5);
  const int by = std::max(4, config.map_height / 5);
  if (player == 1) return {bx, by};
  return {config.map_width - 1 - bx, config.map_height - 1 - by};
}

GameState create_match(const MatchConfig& config) {
  config.validate();
  GameState s;
  s.config = config;
  s.rng.seed(config.seed);
  StepResult sink;
  Stepper st(s, sink);
  const int w = config.map_width;
  const int h = config.map_height;
  const Cell home = start_location(config, 1);
  const int bx = home.x;
  const int by = home.y;

  std::vector<int> amounts;
  for (std::size_t i = 0; i < std::size(kMineralOffsets); ++i) {
    amounts.push_back(1200 + 100 * static_cast<int>(uniform_below(s.rng, 7)));
  }
  auto place_nodes = [&](const Frame& f) {
    std::vector<UnitId> fields;
    for (std::size_t i = 0; i < std::size(kMineralOffsets); ++i) {
      auto [dx, dy] = kMineralOffsets[i];
      Unit& m = st.spawn(cat().mineral_field(), kNeutral, f.at(dx, dy));
      m.resource = amounts[i];
      fields.push_back(m.id);
    }
    for (auto [dx, dy] : kGeyserOffsets) st.spawn(cat().geyser(), kNeutral, f.at(dx, dy));
    return fields;
  };

  const Frame bases[2] = {{{bx, by}, 1, 1}, {{w - 1 - bx, h - 1 - by}, -1, -1}};
  for (PlayerId p = 1; p <= 2; ++p) {
    const Faction f = config.factions[static_cast<std::size_t>(p - 1)];
    PlayerState& ps = s.player(p);
    ps.faction = f;
    ps.minerals = 50;
    const Frame& fr = bases[p - 1];
    Unit& hq = st.spawn(cat().headquarters(f), p, fr.origin);
    const Cell hq_pos = hq.pos;
    if (f == Faction::F2) hq.larva = kLarvaMax;
    const auto fields = place_nodes(fr);
    for (std::size_t i = 0; i < std::size(kWorkerOffsets); ++i) {
      auto [dx, dy] = kWorkerOffsets[i];
      Unit& wk = st.spawn(cat().worker(f), p, fr.at(dx, dy));
      wk.order = Order{OrderKind::kGather, fields[i / 2 % fields.size()], std::nullopt, 0};
    }
    if (f == Faction::F2) st.spawn(cat().kind_id("Overlord"), p, {hq_pos.x - fr.sx, hq_pos.y});
  }
  if (w >= 32 && h >= 32) {
    place_nodes({{w - 1 - bx, by}, -1, 1});
    place_nodes({{bx, h - 1 - by}, 1, -1});
  }
  recompute_supply(s);
  recompute_fog(s);
  return s;
}

StepResult step(GameState& s, const JointActions& actions) {
  StepResult result;
  Stepper st(s, result);
  for (PlayerId p = 1; p <= 2; ++p) {
    const auto& batch = actions[static_cast<std::size_t>(p - 1)];
    std::set<UnitId> used;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto& action = batch[i];
      BatchChecker checker(s, p);
      auto faults = checker.check(action, i);
      auto total = checker.finish();
      faults.insert(faults.end(), total.begin(), total.end());
      const bool reused = std::any_of(action.units.begin(), action.units.end(),
                                      [&](UnitId id) { return used.count(id) > 0; });
      if (!faults.empty() || reused) {
        st.emit(EventType::kRejected, p, action.units.empty() ? 0 : action.units.front(), 0, 0,
                action.action);
        continue;
      }
      used.insert(action.units.begin(), action.units.end());
      st.apply(p, action);
      result.executed[static_cast<std::size_t>(p - 1)].push_back(i);
      recompute_supply(s);
    }
  }
  st.construction();
  st.production();
  st.regeneration();
  st.orders();
  st.damage();
  st.deaths();
  recompute_supply(s);
  recompute_fog(s);
  ++s.tick;
  s.event_log.insert(s.event_log.end(), result.events.begin(), result.events.end());
  return result;
}

Outcome outcome(const GameState& s) {
  const int a = structure_count(s, 1);
  const int b = structure_count(s, 2);
  if (a == 0 && b == 0) return {OutcomeKind::kTie, kNeutral};
  if (b == 0) return {OutcomeKind::kWin, 1};
  if (a == 0) return {OutcomeKind::kWin, 2};
  if (s.tick >= s.config.max_ticks) return {OutcomeKind::kTie, kNeutral};
  return {};
}

int structure_count(const GameState& s, PlayerId player) {
  int n = 0;
  for (const auto& [id, u] : s.units) {
    if (u.owner == player && is_structure(kind_of(u))) ++n;
  }
  return n;
}

bool supply_capped(const PlayerState& p) {
  return p.supply_army + p.supply_workers >= p.supply_cap && p.supply_cap < kSupplyLimit;
}

Pool harvesters(const GameState& s, const Unit& structure) {
  const auto& k = kind_of(structure);
  Pool pool;
  auto gathering_on = [&](UnitId node) {
    int n = 0;
    for (const auto& [id, w] : s.units) {
      if (w.owner == structure.owner && kind_of(w).cls == UnitClass::kWorker &&
          w.expires_at < 0 && w.order.kind == OrderKind::kGather && w.order.target_unit == node) {
        ++n;
      }
    }
    return n;
  };
  if (k.role == StructureRole::kExtractor) {
    pool.max = k.harvester_capacity;
    pool.current = gathering_on(structure.id);
  } else if (k.role == StructureRole::kHeadquarters) {
    for (const auto& [id, m] : s.units) {
      if (kind_of(m).cls == UnitClass::kMineralField &&
          dist2(m.pos, structure.pos) <= kBaseRadius2) {
        pool.max += kind_of(m).harvester_capacity;
        pool.current += gathering_on(id);
      }
    }
  }
  return pool;
}

std::string state_digest(const GameState& s) {
  Fnv1a h;
  h.str(kKernelVersion).i64(s.tick).u64(s.next_id);
  for (const auto& p : s.players) {
    h.i64(static_cast<int>(p.faction)).i64(p.minerals).i64(p.vespene).i64(p.supply_army);
    h.i64(p.supply_workers).i64(p.supply_unused).i64(p.supply_cap).u64(p.tech.size());
    for (const auto& t : p.tech) h.str(t);
  }
  h.u64(s.units.size());
  for (const auto& [id, u] : s.units) {
    h.u64(id).u64(u.kind).i64(u.owner).i64(u.pos.x).i64(u.pos.y);
    for (const Pool& pool : {u.health, u.shield, u.energy}) h.i64(pool.current).i64(pool.max);
    h.i64(static_cast<int>(u.order.kind)).u64(u.order.target_unit);
    h.i64(u.order.target_pos ? u.order.target_pos->x : -1);
    h.i64(u.order.target_pos ? u.order.target_pos->y : -1).i64(u.order.stuck_ticks);
    h.u64(u.queue.size());
    for (const auto& q : u.queue) h.u64(q.ability).i64(q.progress).i64(q.total);
    h.i64(u.build_progress).i64(u.build_total).i64(u.weapon_cooldown).i64(u.move_cooldown);
    h.i64(u.gather_timer).i64(u.last_damaged_tick).i64(u.resource).u64(u.addon);
    h.u64(u.attached_to).u64(u.node).i64(u.larva).i64(u.larva_timer).i64(u.chrono_until);
    h.i64(u.expires_at);
  }
  return h.hex();
}

}  // namespace rtsarena::sim
