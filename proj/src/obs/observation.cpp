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

#include "rtsarena/obs/observation.hpp"

#include <cstdio>
#include <set>

#include "rtsarena/protocol/actions.hpp"

namespace rtsarena::obs {

using sim::Catalog;
using sim::GameState;
using sim::kind_of;
using sim::OrderKind;
using sim::PlayerId;
using sim::Unit;

void ActionHistory::push(const sim::ActionRequest& action) {
  lines_.push_back(protocol::action_line(action));
  while (lines_.size() > capacity_) lines_.pop_front();
}

Aggregated aggregate_workers(const std::vector<UnitView>& units) {
  Aggregated out;
  for (const auto& u : units) {
    if (!(u.worker && u.collecting)) {
      out.individuals.push_back(u);
      continue;
    }
    auto it = std::find_if(out.groups.begin(), out.groups.end(),
                           [&](const WorkerGroup& g) { return g.kind == u.kind; });
    if (it == out.groups.end()) {
      out.groups.push_back({u.kind, {}});
      it = out.groups.end() - 1;
    }
    it->ids.push_back(u.id);
  }
  return out;
}

std::string format_clock(int tick, int ticks_per_second) {
  const int seconds = tick / ticks_per_second;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d:%02d", seconds / 60, seconds % 60);
  return buf;
}

namespace {

std::string cell(Cell c) { return "(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")"; }

std::string pool(const Pool& p) {
  return std::to_string(p.current) + "/" + std::to_string(p.max);
}

std::string id_list(const std::vector<UnitId>& ids) {
  std::string s = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
  return s + "]";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string target_label(const GameState& s, PlayerId viewer, UnitId id) {
  const Unit* t = s.find(id);
  if (t == nullptr || (t->owner != viewer && !s.visible(viewer, t->pos))) return "";
  return " [" + std::to_string(id) + "] " + kind_of(*t).name;
}

std::string state_label(const GameState& s, PlayerId viewer, const Unit& u) {
  const auto& k = kind_of(u);
  if (sim::is_structure(k)) {
    if (!u.complete()) {
      return "under construction (" + std::to_string(u.build_progress * 100 / u.build_total) +
             "%)";
    }
    return "idle";
  }
  const auto& o = u.order;
  switch (o.kind) {
    case OrderKind::kIdle:
      return "idle";
    case OrderKind::kMove:
      if (o.target_unit) return "moving to" + target_label(s, viewer, o.target_unit);
      return o.target_pos ? "moving to " + cell(*o.target_pos) : "moving";
    case OrderKind::kAttack:
      if (o.target_unit) {
        const auto label = target_label(s, viewer, o.target_unit);
        if (!label.empty()) return "attacking" + label;
      }
      return o.target_pos ? "attacking " + cell(*o.target_pos) : "attacking";
    case OrderKind::kGather:
      return "collecting";
    case OrderKind::kConstruct:
      return "constructing" + target_label(s, viewer, o.target_unit);
    case OrderKind::kRepair:
      return "repairing" + target_label(s, viewer, o.target_unit);
  }
  return "idle";
}

UnitView view_of(const GameState& s, PlayerId viewer, const Unit& u, bool own) {
  const auto& k = kind_of(u);
  UnitView v;
  v.id = u.id;
  v.kind = k.name;
  v.pos = u.pos;
  v.health = u.health;
  v.shield = u.shield;
  v.energy = u.energy;
  if (!own) return v;
  v.worker = k.cls == sim::UnitClass::kWorker;
  v.collecting = sim::unit_state(u) == sim::UnitState::kCollecting;
  v.state = state_label(s, viewer, u);
  for (const auto& item : u.queue) {
    const auto& a = Catalog::get().ability(item.ability);
    v.production.push_back(a.effect == sim::Effect::kResearch ? a.tech : a.produces);
  }
  if (k.role == sim::StructureRole::kHeadquarters || k.role == sim::StructureRole::kExtractor) {
    if (u.complete()) v.harvesters = sim::harvesters(s, u);
  }
  if (k.role == sim::StructureRole::kHeadquarters && s.player(viewer).faction == sim::Faction::F2) {
    v.larva = u.larva;
  }
  return v;
}

Point anchor_of(const GameState& s, PlayerId p) {
  const Unit* hq = nullptr;
  double sx = 0, sy = 0;
  int ns = 0;
  double ux = 0, uy = 0;
  int nu = 0;
  for (const auto& [id, u] : s.units) {
    if (u.owner != p) continue;
    const auto& k = kind_of(u);
    if (k.role == sim::StructureRole::kHeadquarters && hq == nullptr) hq = &u;
    if (sim::is_structure(k)) {
      sx += u.pos.x;
      sy += u.pos.y;
      ++ns;
    } else {
      ux += u.pos.x;
      uy += u.pos.y;
      ++nu;
    }
  }
  if (hq) return {static_cast<double>(hq->pos.x), static_cast<double>(hq->pos.y)};
  if (ns) return {sx / ns, sy / ns};
  if (nu) return {ux / nu, uy / nu};
  return {};
}

void block(std::string& out, const UnitView& u, bool own) {
  out += "[" + std::to_string(u.id) + "] " + u.kind + "\n";
  out += "Position: " + cell(u.pos) + "\n";
  const int pct = u.health.max > 0 ? u.health.current * 100 / u.health.max : 0;
  out += "Health: " + pool(u.health) + " (" + std::to_string(pct) + "%)\n";
  if (u.shield.max > 0) out += "Shield: " + pool(u.shield) + "\n";
  if (u.energy.max > 0) out += "Energy: " + pool(u.energy) + "\n";
  if (!own) return;
  if (!u.production.empty()) {
    out += "Production list: " + join(u.production, ", ") + "\n";
  } else {
    out += "State: " + u.state + "\n";
  }
  if (u.larva) out += "Larva: " + std::to_string(*u.larva) + "\n";
  if (u.harvesters) {
    out += "Harvesters: " + pool(*u.harvesters);
    if (u.harvesters->current >= u.harvesters->max) out += " (no more harvesters accepted)";
    out += "\n";
  }
}

std::string finish(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s.empty() ? "[Empty]" : s;
}

// Groups ids by (kind, ability list) in order of first appearance.
std::string ability_lines(const std::vector<std::pair<UnitId, std::string>>& printed,
                          const std::map<UnitId, std::vector<std::string>>& abilities) {
  struct Row {
    std::string kind;
    std::vector<std::string> names;
    std::vector<UnitId> ids;
  };
  std::vector<Row> rows;
  for (const auto& [id, kind] : printed) {
    auto it = abilities.find(id);
    if (it == abilities.end() || it->second.empty()) continue;
    auto row = std::find_if(rows.begin(), rows.end(), [&](const Row& r) {
      return r.kind == kind && r.names == it->second;
    });
    if (row == rows.end()) {
      rows.push_back({kind, it->second, {}});
      row = rows.end() - 1;
    }
    row->ids.push_back(id);
  }
  std::string out;
  for (const auto& r : rows) out += r.kind + id_list(r.ids) + ": " + join(r.names, ", ") + "\n";
  return out;
}

std::string nodes_line(const std::vector<NodeView>& nodes, const char* what) {
  if (nodes.empty()) return std::string("No ") + what + " found";
  std::string s = std::string("Closest ") + what + ": ";
  for (std::size_t i = 0; i < nodes.size() && i < 4; ++i) {
    s += (i ? ", " : "") + ("[" + std::to_string(nodes[i].id) + "]") + cell(nodes[i].pos);
  }
  return s;
}

std::string cost_text(const sim::AbilityDef& a) {
  std::vector<std::string> parts;
  if (a.minerals) parts.push_back(std::to_string(a.minerals) + " minerals");
  if (a.vespene) parts.push_back(std::to_string(a.vespene) + " vespene");
  if (parts.empty()) return "";
  return " Cost: " + join(parts, ", ") + ".";
}

}  // namespace

FoggedView make_view(const GameState& s, PlayerId p) {
  FoggedView v;
  v.tick = s.tick;
  v.ticks_per_second = s.config.ticks_per_game_second;
  v.player = s.player(p);
  v.faction = v.player.faction;
  v.map_width = s.config.map_width;
  v.map_height = s.config.map_height;
  v.anchor = anchor_of(s, p);
  std::set<UnitId> occupied;
  for (const auto& [id, u] : s.units) {
    if (u.node) occupied.insert(u.node);
  }
  for (const auto& [id, u] : s.units) {
    const auto& k = kind_of(u);
    if (u.owner == p) {
      (sim::is_structure(k) ? v.structures : v.units).push_back(view_of(s, p, u, true));
    } else if (u.owner == sim::opponent(p) && s.visible(p, u.pos)) {
      (sim::is_structure(k) ? v.enemy_structures : v.enemy_units)
          .push_back(view_of(s, p, u, false));
    } else if (u.owner == sim::kNeutral && s.visible(p, u.pos) && !occupied.count(id) &&
               u.resource > 0) {
      (k.cls == sim::UnitClass::kMineralField ? v.minerals : v.geysers).push_back({id, u.pos});
    }
  }
  for (auto* nodes : {&v.minerals, &v.geysers}) {
    *nodes = order_by_distance(*nodes, v.anchor);
  }
  v.abilities = sim::legal_abilities(s, p);
  return v;
}

TextObservation render_view(const FoggedView& v, const ActionHistory& history) {
  TextObservation obs;
  obs.source = v;
  auto add = [&](std::string name, std::string text) {
    obs.sections.push_back({std::move(name), finish(std::move(text))});
  };

  std::string round;
  round += "Time: " + format_clock(v.tick, v.ticks_per_second) + "\n";
  round += "Race: " + std::string(sim::faction_race(v.faction)) + "\n";
  round += "Minerals: " + std::to_string(v.player.minerals) + "\n";
  round += "Vespene: " + std::to_string(v.player.vespene) + "\n";
  round += "Supply army: " + std::to_string(v.player.supply_army) + "\n";
  round += "Supply workers: " + std::to_string(v.player.supply_workers) + "\n";
  round += "Supply unused: " + std::to_string(v.player.supply_unused) + "\n";
  round += "Map size: " + std::to_string(v.map_width) + "x" + std::to_string(v.map_height);
  add("Round state", round);

  const auto agg = aggregate_workers(order_units(v.units, v.anchor));
  std::string units;
  std::vector<std::pair<UnitId, std::string>> printed_units;
  for (const auto& g : agg.groups) {
    units += id_list(g.ids) + " " + g.kind + "\nState: collecting resources automatically\n";
    for (UnitId id : g.ids) printed_units.emplace_back(id, g.kind);
  }
  for (const auto& u : order_units(agg.individuals, v.anchor)) {
    block(units, u, true);
    printed_units.emplace_back(u.id, u.kind);
  }
  add("Own units", units);
  add("Unit abilities", ability_lines(printed_units, v.abilities));

  std::string structures;
  std::vector<std::pair<UnitId, std::string>> printed_structures;
  for (const auto& u : order_units(v.structures, v.anchor)) {
    block(structures, u, true);
    printed_structures.emplace_back(u.id, u.kind);
  }
  add("Own structures", structures);
  add("Structure abilities", ability_lines(printed_structures, v.abilities));

  std::string enemies;
  for (const auto& u : order_units(v.enemy_units, v.anchor)) block(enemies, u, false);
  add("Visible enemy units", enemies);
  std::string enemy_structures;
  for (const auto& u : order_units(v.enemy_structures, v.anchor)) {
    block(enemy_structures, u, false);
  }
  add("Visible enemy structures", enemy_structures);

  std::string hist;
  for (const auto& line : history.lines()) hist += line + "\n";
  add("Action history", hist);

  add("Map information", nodes_line(order_by_distance(v.minerals, v.anchor), "mineral fields") +
                            "\n" +
                            nodes_line(order_by_distance(v.geysers, v.anchor), "vespene geysers"));

  std::set<std::string> shown;
  for (const auto* printed : {&printed_units, &printed_structures}) {
    for (const auto& [id, kind] : *printed) {
      auto it = v.abilities.find(id);
      if (it != v.abilities.end()) shown.insert(it->second.begin(), it->second.end());
    }
  }
  std::string desc;
  const auto& cat = Catalog::get();
  for (const auto aid : cat.faction_abilities(v.faction)) {
    const auto& a = cat.ability(aid);
    if (!shown.count(a.name)) continue;
    desc += a.name + "(target: " + std::string(sim::target_kind_name(a.target)) +
            "): " + a.description + cost_text(a) + "\n";
  }
  add("Ability description", desc);

  for (std::size_t i = 0; i < obs.sections.size(); ++i) {
    if (i) obs.full_text += "\n\n";
    obs.full_text += "# " + obs.sections[i].name + "\n" + obs.sections[i].text;
  }
  return obs;
}

TextObservation render_observation(const GameState& s, PlayerId p, const ActionHistory& history) {
  return render_view(make_view(s, p), history);
}

}  // namespace rtsarena::obs
