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

#include "rtsarena/agent/scripted_model.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

#include "rtsarena/common/digest.hpp"
#include "rtsarena/protocol/actions.hpp"
#include "rtsarena/sim/catalog.hpp"

namespace rtsarena::agent {

using nlohmann::json;
using sim::Cell;
using sim::UnitId;

bool ParsedObservation::has(UnitId id, std::string_view ability) const {
  auto it = abilities.find(id);
  if (it == abilities.end()) return false;
  return std::find(it->second.begin(), it->second.end(), ability) != it->second.end();
}

namespace {

UnitId to_id(const std::string& s) { return static_cast<UnitId>(std::stoul(s)); }

std::string section_after(const std::string& text, const std::string& heading) {
  auto at = text.find(heading);
  if (at == std::string::npos) return "";
  at += heading.size();
  auto end = text.find("\n\n**", at);
  return text.substr(at, end == std::string::npos ? std::string::npos : end - at);
}

std::vector<UnitId> id_list(const std::string& s) {
  std::vector<UnitId> ids;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.find_first_of("0123456789") != std::string::npos) ids.push_back(to_id(tok));
  }
  return ids;
}

std::vector<std::string> name_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(' '));
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::optional<Cell> cell_of(const std::string& s) {
  static const std::regex re(R"(\((-?\d+), (-?\d+)\))");
  std::smatch m;
  if (!std::regex_search(s, m, re)) return std::nullopt;
  return Cell{std::stoi(m[1]), std::stoi(m[2])};
}

int int_field(const std::string& line, const std::string& key) {
  return std::stoi(line.substr(key.size()));
}

void parse_block(const std::string& body, std::vector<ParsedUnit>& into, ParsedObservation* own) {
  static const std::regex header(R"(^\[([\d, ]+)\] (\w+)$)");
  std::stringstream in(body);
  std::string line;
  ParsedUnit* cur = nullptr;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, header)) {
      auto ids = id_list(m[1]);
      if (ids.size() > 1 || (own && line.find("collecting resources") != std::string::npos)) {
        cur = nullptr;
      }
      if (ids.size() == 1) {
        into.push_back(ParsedUnit{});
        cur = &into.back();
        cur->id = ids[0];
        cur->kind = m[2];
      } else if (own) {
        own->worker_kind = m[2];
        own->collecting.insert(own->collecting.end(), ids.begin(), ids.end());
      }
      continue;
    }
    if (cur == nullptr) continue;
    if (line.rfind("Position: ", 0) == 0) {
      if (auto c = cell_of(line)) cur->pos = *c;
    } else if (line.rfind("State: ", 0) == 0) {
      cur->state = line.substr(7);
    } else if (line.rfind("Production list: ", 0) == 0) {
      cur->production = name_list(line.substr(17));
    } else if (line.rfind("Energy: ", 0) == 0) {
      cur->energy = int_field(line, "Energy: ");
    } else if (line.rfind("Larva: ", 0) == 0) {
      cur->larva = int_field(line, "Larva: ");
    } else if (line.rfind("Harvesters: ", 0) == 0) {
      sim::Pool p;
      if (std::sscanf(line.c_str(), "Harvesters: %d/%d", &p.current, &p.max) == 2) {
        cur->harvesters = p;
      }
    }
  }
}

std::map<std::string, std::string> split_sections(const std::string& obs) {
  std::map<std::string, std::string> sections;
  std::stringstream in(obs);
  std::string line, name, body;
  auto flush = [&] {
    if (!name.empty()) sections[name] = body;
  };
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      flush();
      name = line.substr(2);
      body.clear();
    } else {
      body += line + "\n";
    }
  }
  flush();
  return sections;
}

std::vector<std::pair<UnitId, Cell>> nodes(const std::string& line) {
  static const std::regex re(R"(\[(\d+)\]\((-?\d+), (-?\d+)\))");
  std::vector<std::pair<UnitId, Cell>> out;
  for (std::sregex_iterator it(line.begin(), line.end(), re), end; it != end; ++it) {
    out.push_back({to_id((*it)[1]), Cell{std::stoi((*it)[2]), std::stoi((*it)[3])}});
  }
  return out;
}

}  // namespace

ParsedObservation parse_observation(const std::string& obs_text) {
  ParsedObservation obs;
  auto sections = split_sections(obs_text);

  std::stringstream round(sections["Round state"]);
  std::string line;
  while (std::getline(round, line)) {
    int a = 0, b = 0;
    if (std::sscanf(line.c_str(), "Time: %d:%d", &a, &b) == 2) obs.seconds = a * 60 + b;
    else if (line.rfind("Race: ", 0) == 0) obs.race = line.substr(6);
    else if (line.rfind("Minerals: ", 0) == 0) obs.minerals = int_field(line, "Minerals: ");
    else if (line.rfind("Vespene: ", 0) == 0) obs.vespene = int_field(line, "Vespene: ");
    else if (line.rfind("Supply army: ", 0) == 0) obs.supply_army = int_field(line, "Supply army: ");
    else if (line.rfind("Supply workers: ", 0) == 0)
      obs.supply_workers = int_field(line, "Supply workers: ");
    else if (line.rfind("Supply unused: ", 0) == 0)
      obs.supply_unused = int_field(line, "Supply unused: ");
    else if (std::sscanf(line.c_str(), "Map size: %dx%d", &a, &b) == 2) {
      obs.map_width = a;
      obs.map_height = b;
    }
  }

  parse_block(sections["Own units"], obs.units, &obs);
  parse_block(sections["Own structures"], obs.structures, nullptr);
  parse_block(sections["Visible enemy units"], obs.enemy_units, nullptr);
  parse_block(sections["Visible enemy structures"], obs.enemy_structures, nullptr);

  static const std::regex ability_row(R"(^(\w+)\[([\d, ]+)\]: (.*)$)");
  for (const char* name : {"Unit abilities", "Structure abilities"}) {
    std::stringstream in(sections[name]);
    while (std::getline(in, line)) {
      std::smatch m;
      if (!std::regex_match(line, m, ability_row)) continue;
      auto names = name_list(m[3]);
      for (auto id : id_list(m[2])) {
        auto& list = obs.abilities[id];
        list.insert(list.end(), names.begin(), names.end());
      }
    }
  }

  std::stringstream map(sections["Map information"]);
  while (std::getline(map, line)) {
    if (line.rfind("Closest mineral fields", 0) == 0) obs.mineral_fields = nodes(line);
    if (line.rfind("Closest vespene geysers", 0) == 0) obs.geysers = nodes(line);
  }

  static const std::regex desc(R"(^(\w+)\(target: (\w+)\):.*$)");
  static const std::regex cost(R"(Cost: (\d+) minerals(?:, (\d+) vespene)?\.)");
  static const std::regex gas_only(R"(Cost: (\d+) vespene\.)");
  std::stringstream descs(sections["Ability description"]);
  while (std::getline(descs, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, desc)) continue;
    ParsedCost c;
    c.target = m[2];
    std::smatch cm;
    if (std::regex_search(line, cm, cost)) {
      c.minerals = std::stoi(cm[1]);
      if (cm[2].matched) c.vespene = std::stoi(cm[2]);
    } else if (std::regex_search(line, cm, gas_only)) {
      c.vespene = std::stoi(cm[1]);
    }
    obs.costs[m[1]] = c;
  }
  return obs;
}

namespace {

struct Doctrine {
  std::vector<std::string> hq;
  std::string supply;  // structure, or a larva unit for Zerg
  bool supply_is_unit = false;
  std::string gas;
  std::string production;
  std::string tech;
  std::string basic;
  std::string advanced;
};

const Doctrine& doctrine(const std::string& race) {
  static const Doctrine protoss{{"Nexus"}, "Pylon", false, "Assimilator", "Gateway",
                                "CyberneticsCore", "Zealot", "Stalker"};
  static const Doctrine terran{{"CommandCenter", "OrbitalCommand"}, "SupplyDepot", false,
                               "Refinery", "Barracks", "BarracksTechLab", "Marine", "Marauder"};
  static const Doctrine zerg{{"Hatchery", "Lair"}, "Overlord", true, "Extractor", "SpawningPool",
                             "RoachWarren", "Zergling", "Roach"};
  if (race == "Terran") return terran;
  if (race == "Zerg") return zerg;
  return protoss;
}

std::string upper(const std::string& s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::string article(const std::string& word) {
  return std::string("AEIOU").find(word[0]) != std::string::npos ? "an" : "a";
}

// Ability on `id` whose name contains `verb` and ends with _KIND.
std::optional<std::string> ability_for(const ParsedObservation& obs, UnitId id,
                                       const std::string& verb, const std::string& kind) {
  auto it = obs.abilities.find(id);
  if (it == obs.abilities.end()) return std::nullopt;
  for (const auto& a : it->second) {
    if (a.find(verb) != std::string::npos && ends_with(a, "_" + upper(kind))) return a;
  }
  return std::nullopt;
}

int supply_of(const std::string& kind) {
  const auto& cat = sim::Catalog::get();
  auto k = cat.find_kind(kind);
  return k ? cat.kind(*k).supply_cost : 0;
}

struct Budget {
  int minerals = 0;
  int vespene = 0;
  int supply = 0;
  bool take(const ParsedCost& c, int food = 0) {
    if (c.minerals > minerals || c.vespene > vespene || food > supply) return false;
    minerals -= c.minerals;
    vespene -= c.vespene;
    supply -= food;
    return true;
  }
};

ParsedCost cost_of(const ParsedObservation& obs, const std::string& ability) {
  auto it = obs.costs.find(ability);
  return it == obs.costs.end() ? ParsedCost{} : it->second;
}

class View {
 public:
  explicit View(const ParsedObservation& o) : obs(o), d(doctrine(o.race)) {}

  const ParsedObservation& obs;
  const Doctrine& d;

  bool is_hq(const ParsedUnit& u) const {
    return std::find(d.hq.begin(), d.hq.end(), u.kind) != d.hq.end();
  }
  std::vector<const ParsedUnit*> structures(const std::string& kind, bool complete_only) const {
    std::vector<const ParsedUnit*> out;
    for (const auto& s : obs.structures) {
      if (s.kind == kind && (!complete_only || !s.under_construction())) out.push_back(&s);
    }
    return out;
  }
  std::vector<const ParsedUnit*> hqs() const {
    std::vector<const ParsedUnit*> out;
    for (const auto& s : obs.structures) {
      if (is_hq(s) && !s.under_construction()) out.push_back(&s);
    }
    return out;
  }
  int count(const std::string& kind) const {
    int n = 0;
    for (const auto& s : obs.structures) n += s.kind == kind;
    for (const auto& u : obs.units) n += u.kind == kind;
    for (const auto& s : obs.structures) {
      n += static_cast<int>(std::count(s.production.begin(), s.production.end(), kind));
    }
    return n;
  }
  std::optional<Cell> home() const {
    for (const auto& s : obs.structures) {
      if (is_hq(s)) return s.pos;
    }
    if (!obs.structures.empty()) return obs.structures.front().pos;
    if (!obs.units.empty()) return obs.units.front().pos;
    return std::nullopt;
  }
  int workers() const {
    int n = static_cast<int>(obs.collecting.size());
    for (const auto& u : obs.units) n += u.kind == obs.worker_kind;
    return n;
  }
  std::optional<UnitId> builder(const std::string& ability,
                                const std::set<UnitId>& used) const {
    for (auto id : obs.collecting) {
      if (!used.count(id) && obs.has(id, ability)) return id;
    }
    for (const auto& u : obs.units) {
      if (!used.count(u.id) && obs.has(u.id, ability)) return u.id;
    }
    return std::nullopt;
  }
  std::vector<UnitId> army(const std::optional<UnitId>& skip_target) const {
    std::vector<UnitId> out;
    for (const auto& u : obs.units) {
      if (u.kind == obs.worker_kind || u.kind == "Overlord" || u.kind == "Queen" ||
          u.kind == "MULE" || !obs.has(u.id, "ATTACK_ATTACK")) {
        continue;
      }
      if (skip_target && u.state.find("[" + std::to_string(*skip_target) + "]") !=
                             std::string::npos) {
        continue;
      }
      out.push_back(u.id);
    }
    return out;
  }
};

// Deterministic placement on the side of the base away from the minerals.
std::optional<Cell> place(const ParsedObservation& obs, const std::string& kind,
                          const std::set<std::pair<int, int>>& reserved, int salt) {
  View v(obs);
  auto home = v.home();
  if (!home || obs.map_width <= 0) return std::nullopt;
  int mx = 0, my = 0, n = 0;
  for (const auto& [id, c] : obs.mineral_fields) {
    if (dist2(c, *home) <= 100) {
      mx += c.x;
      my += c.y;
      ++n;
    }
  }
  auto sgn = [](int x) { return (x > 0) - (x < 0); };
  Cell dir = n > 0 ? Cell{sgn(home->x * n - mx), sgn(home->y * n - my)}
                   : Cell{sgn(obs.map_width - 2 * home->x), sgn(obs.map_height - 2 * home->y)};
  if (dir.x == 0) dir.x = 1;
  if (dir.y == 0) dir.y = 1;

  std::vector<Cell> taken;
  for (const auto& s : obs.structures) taken.push_back(s.pos);
  for (const auto& s : obs.enemy_structures) taken.push_back(s.pos);
  for (const auto& [id, c] : obs.mineral_fields) taken.push_back(c);
  for (const auto& [id, c] : obs.geysers) taken.push_back(c);
  for (const auto& [x, y] : reserved) taken.push_back(Cell{x, y});

  std::vector<Cell> pylons;
  for (const auto* p : v.structures("Pylon", true)) pylons.push_back(p->pos);
  const bool powered = obs.race == "Protoss" && kind != "Pylon" && kind != "Nexus" &&
                       kind != "Assimilator";

  std::vector<Cell> candidates;
  for (int dy = -9; dy <= 9; ++dy) {
    for (int dx = -9; dx <= 9; ++dx) {
      Cell c{home->x + dx, home->y + dy};
      if (c.x < 1 || c.y < 1 || c.x > obs.map_width - 2 || c.y > obs.map_height - 2) continue;
      if (dx * dir.x + dy * dir.y < 3) continue;
      bool clear = std::none_of(taken.begin(), taken.end(), [&](Cell t) {
        return std::abs(t.x - c.x) <= 1 && std::abs(t.y - c.y) <= 1;
      });
      if (!clear) continue;
      if (powered && std::none_of(pylons.begin(), pylons.end(),
                                  [&](Cell p) { return dist2(p, c) <= 30; })) {
        continue;
      }
      candidates.push_back(c);
    }
  }
  if (candidates.empty()) return std::nullopt;
  std::sort(candidates.begin(), candidates.end(), [&](Cell a, Cell b) {
    auto ka = std::make_tuple(dist2(a, *home), a.y, a.x);
    auto kb = std::make_tuple(dist2(b, *home), b.y, b.x);
    return ka < kb;
  });
  const auto window = std::min<std::size_t>(candidates.size(), 4);
  return candidates[static_cast<std::size_t>(salt) % window];
}

std::string fenced(const json& value) { return "```\n" + value.dump(4) + "\n```"; }

std::vector<std::string> commands_between(const std::string& prompt, const std::string& heading) {
  auto body = section_after(prompt, heading);
  auto extracted = protocol::extract_json(body);
  std::vector<std::string> out;
  if (!extracted.value) return out;
  for (const auto& c : *extracted.value) {
    if (c.is_string()) out.push_back(c.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<std::string> ScriptedModel::plan(const ParsedObservation& obs) const {
  View v(obs);
  const auto& d = v.d;
  std::vector<std::string> cmds;
  Budget budget{obs.minerals, obs.vespene, obs.supply_unused};
  std::set<UnitId> used;
  auto hqs = v.hqs();

  // supply
  const int food_total = obs.supply_army + obs.supply_workers + obs.supply_unused;
  const int producers = static_cast<int>(v.structures(d.production, true).size() + hqs.size());
  int supply_pending = 0;
  for (const auto& s : obs.structures) {
    supply_pending += s.kind == d.supply && s.under_construction();
    supply_pending += static_cast<int>(std::count(s.production.begin(), s.production.end(),
                                                  d.supply));
  }
  if (obs.supply_unused < 4 + 2 * producers && supply_pending == 0 && food_total < 200) {
    if (d.supply_is_unit) {
      for (const auto* h : hqs) {
        auto a = ability_for(obs, h->id, "TRAIN", d.supply);
        if (a && h->larva > 0) {
          if (!budget.take(cost_of(obs, *a))) return cmds;
          cmds.push_back("Train 1 " + d.supply + " at " + h->kind + " [" + std::to_string(h->id) +
                         "]");
          used.insert(h->id);
          break;
        }
      }
    } else {
      auto ab = "BUILD_" + upper(d.supply);
      std::optional<std::string> full;
      for (const auto& [name, c] : obs.costs) {
        if (ends_with(name, ab)) full = name;
      }
      if (full && v.builder(*full, used)) {
        if (!budget.take(cost_of(obs, *full))) return cmds;
        cmds.push_back("Build " + article(d.supply) + " " + d.supply);
      }
    }
  }

  auto build_cmd = [&](const std::string& kind) -> std::optional<std::string> {
    for (const auto& [name, c] : obs.costs) {
      if (name.find("BUILD") != std::string::npos && ends_with(name, "_" + upper(kind)) &&
          v.builder(name, used)) {
        return name;
      }
    }
    return std::nullopt;
  };

  // workers
  const int gas_done = static_cast<int>(v.structures(d.gas, true).size());
  int workers = v.workers();
  const int target = std::min(24, 16 + 3 * gas_done) * std::max<int>(1, hqs.size());
  for (const auto* h : hqs) {
    if (workers >= target || used.count(h->id)) continue;
    auto a = ability_for(obs, h->id, "TRAIN", obs.worker_kind.empty() ? "Probe" : obs.worker_kind);
    if (!a) continue;
    const bool room = d.supply_is_unit ? h->larva > 0 : h->production.size() < 2;
    if (!room || !budget.take(cost_of(obs, *a), 1)) continue;
    cmds.push_back("Train 1 " + obs.worker_kind + " at " + h->kind + " [" +
                   std::to_string(h->id) + "]");
    used.insert(h->id);
    ++workers;
  }

  // production
  int want_prod = (d.supply_is_unit || workers < 14) ? 1 : 2;
  if (!d.supply_is_unit && budget.minerals >= 400) want_prod = std::min(4, v.count(d.production) + 1);
  if (v.count(d.production) < want_prod) {
    if (auto a = build_cmd(d.production); a && budget.take(cost_of(obs, *a))) {
      cmds.push_back("Build " + article(d.production) + " " + d.production);
    }
  }

  if (d.supply_is_unit && hqs.size() < 2 && v.count(d.hq.front()) < 2 && budget.minerals >= 350) {
    if (auto a = build_cmd(d.hq.front()); a && budget.take(cost_of(obs, *a))) {
      cmds.push_back("Build a " + d.hq.front());
    }
  }

  // gas
  if (v.count(d.gas) == 0 && v.count(d.production) > 0 && !obs.geysers.empty()) {
    if (auto a = build_cmd(d.gas); a && budget.take(cost_of(obs, *a))) {
      cmds.push_back("Build " + article(d.gas) + " " + d.gas + " on Vespene Geyser [" +
                     std::to_string(obs.geysers.front().first) + "]");
    }
  }

  // tech
  if (v.count(d.tech) == 0 && !v.structures(d.production, true).empty()) {
    if (obs.race == "Terran") {
      for (const auto* b : v.structures("Barracks", true)) {
        if (used.count(b->id) || !b->production.empty()) continue;
        auto a = ability_for(obs, b->id, "BUILD", "BARRACKS");
        if (a && budget.take(cost_of(obs, *a))) {
          cmds.push_back("Build a Barracks Tech Lab at Barracks [" + std::to_string(b->id) + "]");
          used.insert(b->id);
          break;
        }
      }
    } else if (auto a = build_cmd(d.tech); a && budget.take(cost_of(obs, *a))) {
      cmds.push_back("Build " + article(d.tech) + " " + d.tech);
    }
  }

  // orbital upgrade
  if (obs.race == "Terran" && workers >= 16) {
    for (const auto* h : hqs) {
      if (used.count(h->id) || !h->production.empty()) continue;
      if (auto a = ability_for(obs, h->id, "UPGRADETO", "OrbitalCommand");
          a && budget.take(cost_of(obs, *a))) {
        cmds.push_back("Upgrade " + h->kind + " [" + std::to_string(h->id) +
                       "] to OrbitalCommand");
        used.insert(h->id);
      }
    }
  }

  // army
  std::vector<const ParsedUnit*> producers_now;
  if (d.supply_is_unit) {
    for (const auto* h : hqs) {
      if (!used.count(h->id) && h->larva > 0) producers_now.push_back(h);
    }
  } else {
    producers_now = v.structures(d.production, true);
  }
  for (const auto* p : producers_now) {
    if (used.count(p->id) || (!d.supply_is_unit && p->production.size() >= 2)) continue;
    for (const auto& kind : {d.advanced, d.basic}) {
      auto a = ability_for(obs, p->id, "TRAIN", kind);
      if (a && budget.take(cost_of(obs, *a), supply_of(kind))) {
        cmds.push_back("Train 1 " + kind + " at " + p->kind + " [" + std::to_string(p->id) + "]");
        used.insert(p->id);
        break;
      }
    }
  }
  if (d.supply_is_unit && v.count("Queen") < static_cast<int>(hqs.size())) {
    for (const auto* h : hqs) {
      if (used.count(h->id) || !h->production.empty()) continue;
      auto a = ability_for(obs, h->id, "TRAIN", "Queen");
      if (a && budget.take(cost_of(obs, *a), supply_of("Queen"))) {
        cmds.push_back("Train 1 Queen at " + h->kind + " [" + std::to_string(h->id) + "]");
        used.insert(h->id);
        break;
      }
    }
  }

  // abilities that cost energy
  for (const auto* h : hqs) {
    if (obs.has(h->id, "EFFECT_CHRONOBOOSTENERGYCOST") && h->energy >= 50) {
      const ParsedUnit* target = nullptr;
      for (const auto& s : obs.structures) {
        if (!s.production.empty() && s.kind != "Nexus") {
          target = &s;
          break;
        }
      }
      if (target == nullptr && !h->production.empty()) target = h;
      if (target) {
        cmds.push_back("Use Chrono Boost on " + target->kind + " [" + std::to_string(target->id) +
                       "] with " + h->kind + " [" + std::to_string(h->id) + "]");
      }
    }
    if (obs.has(h->id, "CALLDOWNMULE_CALLDOWNMULE") && h->energy >= 50 &&
        !obs.mineral_fields.empty()) {
      cmds.push_back("Call down a MULE from " + h->kind + " [" + std::to_string(h->id) + "]");
    }
  }
  for (const auto& u : obs.units) {
    if (!obs.has(u.id, "EFFECT_INJECTLARVA") || u.energy < 25 || hqs.empty()) continue;
    const auto* h = hqs.front();
    cmds.push_back("Inject Larva on " + h->kind + " [" + std::to_string(h->id) + "] with Queen [" +
                   std::to_string(u.id) + "]");
    break;
  }

  // attack
  auto home = v.home();
  if (home) {
    const ParsedUnit* threat = nullptr;
    for (const auto& e : obs.enemy_units) {
      if (dist2(e.pos, *home) <= 225 && (!threat || dist2(e.pos, *home) < dist2(threat->pos, *home)))
        threat = &e;
    }
    const int wave = obs.seconds < 600 ? 8 : 4;
    if (threat && !v.army(threat->id).empty()) {
      cmds.push_back("Attack enemy " + threat->kind + " [" + std::to_string(threat->id) +
                     "] with all army units");
    } else if (static_cast<int>(v.army(std::nullopt).size()) >= wave) {
      const ParsedUnit* best = nullptr;
      for (const auto& e : obs.enemy_structures) {
        if (!best || dist2(e.pos, *home) < dist2(best->pos, *home)) best = &e;
      }
      if (best) {
        if (!v.army(best->id).empty()) {
          cmds.push_back("Attack enemy " + best->kind + " [" + std::to_string(best->id) +
                         "] with all army units");
        }
      } else {
        bool idle = false;
        for (const auto& u : obs.units) idle |= u.state == "idle" && obs.has(u.id, "ATTACK_ATTACK") &&
                                                u.kind != obs.worker_kind;
        if (idle) {
          Cell t{obs.map_width - 1 - home->x, obs.map_height - 1 - home->y};
          cmds.push_back("Attack position (" + std::to_string(t.x) + ", " + std::to_string(t.y) +
                         ") with all army units");
        }
      }
    }
  }
  return cmds;
}

std::string ScriptedModel::execute(const ParsedObservation& obs,
                                   const std::vector<std::string>& commands, bool flaw) const {
  View v(obs);
  json out = json::array();
  std::set<UnitId> used;
  std::set<std::pair<int, int>> reserved;
  Budget budget{obs.minerals, obs.vespene, obs.supply_unused};

  static const std::regex train(R"(^Train (\d+) (\w+) (?:at|from) (\w+) \[(\d+)\]$)");
  static const std::regex build(R"(^Build an? (\w+)$)");
  static const std::regex build_on(R"(^Build an? (\w+) on Vespene Geyser \[(\d+)\]$)");
  static const std::regex addon(R"(^Build an? (\w+) Tech Lab at (\w+) \[(\d+)\]$)");
  static const std::regex research(R"(^Research (\w+) at (\w+) \[(\d+)\]$)");
  static const std::regex upgrade(R"(^Upgrade (\w+) \[(\d+)\] to (\w+)$)");
  static const std::regex chrono(
      R"(^Use Chrono Boost on (\w+) \[(\d+)\](?: with (\w+) \[(\d+)\])?$)");
  static const std::regex inject(R"(^Inject Larva on (\w+) \[(\d+)\] with Queen \[(\d+)\]$)");
  static const std::regex mule(R"(^Call down a MULE from (\w+) \[(\d+)\]$)");
  static const std::regex attack_unit(R"(^Attack enemy (\w+) \[(\d+)\] with all army units$)");
  static const std::regex attack_with(R"(^Attack enemy (\w+) \[(\d+)\] with (\w+) \[([\d, ]+)\]$)");
  static const std::regex attack_pos(R"(^Attack position \((\d+), (\d+)\) with all army units$)");

  auto emit = [&](const std::string& ability, std::vector<UnitId> units, int food = 0) -> json* {
    for (auto u : units) {
      if (used.count(u) || !obs.has(u, ability)) return nullptr;
    }
    if (units.empty() || !budget.take(cost_of(obs, ability), food)) return nullptr;
    used.insert(units.begin(), units.end());
    out.push_back(json{{"action", ability}, {"units", units}});
    return &out.back();
  };

  for (const auto& cmd : commands) {
    std::smatch m;
    if (std::regex_match(cmd, m, train)) {
      const UnitId host = to_id(m[4]);
      auto a = ability_for(obs, host, "TRAIN", m[2]);
      if (a) emit(*a, {host}, supply_of(m[2]));
    } else if (std::regex_match(cmd, m, build_on)) {
      for (const auto& [name, c] : obs.costs) {
        if (name.find("BUILD") == std::string::npos || !ends_with(name, "_" + upper(m[1]))) continue;
        if (auto b = v.builder(name, used)) {
          if (auto* a = emit(name, {*b})) (*a)["target_unit"] = to_id(m[2]);
        }
        break;
      }
    } else if (std::regex_match(cmd, m, build)) {
      for (const auto& [name, c] : obs.costs) {
        if (name.find("BUILD") == std::string::npos || !ends_with(name, "_" + upper(m[1]))) continue;
        auto b = v.builder(name, used);
        auto at = place(obs, m[1], reserved, obs.seconds + static_cast<int>(reserved.size()));
        if (b && at) {
          if (auto* a = emit(name, {*b})) {
            (*a)["target_position"] = {at->x, at->y};
            reserved.insert({at->x, at->y});
          }
        }
        break;
      }
    } else if (std::regex_match(cmd, m, addon)) {
      const UnitId host = to_id(m[3]);
      if (auto a = ability_for(obs, host, "TECHLAB", m[2])) emit(*a, {host});
    } else if (std::regex_match(cmd, m, research)) {
      const UnitId host = to_id(m[3]);
      if (auto a = ability_for(obs, host, "RESEARCH", m[1])) emit(*a, {host});
    } else if (std::regex_match(cmd, m, upgrade)) {
      const UnitId host = to_id(m[2]);
      if (auto a = ability_for(obs, host, "UPGRADETO", m[3])) emit(*a, {host});
    } else if (std::regex_match(cmd, m, chrono)) {
      std::optional<UnitId> caster;
      if (m[4].matched) caster = to_id(m[4]);
      for (const auto& st : obs.structures) {
        if (!caster && !used.count(st.id) && st.energy >= 50 &&
            obs.has(st.id, "EFFECT_CHRONOBOOSTENERGYCOST")) {
          caster = st.id;
        }
      }
      if (!caster) continue;
      if (auto* a = emit("EFFECT_CHRONOBOOSTENERGYCOST", {*caster})) {
        (*a)["target_unit"] = to_id(m[2]);
      }
    } else if (std::regex_match(cmd, m, inject)) {
      if (auto* a = emit("EFFECT_INJECTLARVA", {to_id(m[3])})) {
        (*a)["target_unit"] = to_id(m[2]);
      }
    } else if (std::regex_match(cmd, m, mule)) {
      const UnitId host = to_id(m[2]);
      if (!obs.mineral_fields.empty()) {
        if (auto* a = emit("CALLDOWNMULE_CALLDOWNMULE", {host})) {
          (*a)["target_unit"] = obs.mineral_fields.front().first;
        }
      }
    } else if (std::regex_match(cmd, m, attack_unit)) {
      const UnitId target = to_id(m[2]);
      std::vector<UnitId> free;
      for (auto id : v.army(target)) {
        if (!used.count(id)) free.push_back(id);
      }
      if (auto* a = emit("ATTACK_ATTACK", free)) (*a)["target_unit"] = target;
    } else if (std::regex_match(cmd, m, attack_with)) {
      std::vector<UnitId> free;
      for (auto id : id_list(m[4])) {
        if (!used.count(id)) free.push_back(id);
      }
      if (auto* a = emit("ATTACK_ATTACK", free)) (*a)["target_unit"] = to_id(m[2]);
    } else if (std::regex_match(cmd, m, attack_pos)) {
      std::vector<UnitId> free;
      for (auto id : v.army(std::nullopt)) {
        if (!used.count(id)) free.push_back(id);
      }
      if (auto* a = emit("ATTACK_ATTACK", free)) {
        (*a)["target_position"] = {std::stoi(m[1]), std::stoi(m[2])};
      }
    }
  }

  if (flaw) {
    const auto kind = Fnv1a().bytes(obs.race.data(), obs.race.size()).value() % 3 +
                      static_cast<unsigned>(obs.seconds);
    if (!out.empty() && kind % 3 == 0) {
      auto dup = out.front();
      dup["action"] = "MOVE_MOVE";
      dup.erase("target_unit");
      dup["target_position"] = {1, 1};
      out.push_back(dup);
    } else if (!out.empty() && kind % 3 == 1) {
      out.front()["action"] = out.front()["action"].get<std::string>() + "E";
    } else if (!obs.collecting.empty()) {
      out.push_back(json{{"action", "ATTACK_ATTACK"}, {"units", {obs.collecting.back()}}});
    } else if (!out.empty()) {
      out.front()["action"] = out.front()["action"].get<std::string>() + "E";
    }
  }
  return fenced(out);
}

bool ScriptedModel::flawed(const std::string& prompt) const {
  if (flaw_rate_ <= 0) return false;
  const auto h = Fnv1a().bytes(prompt.data(), prompt.size()).value();
  return static_cast<double>(h % 10000) / 10000.0 < flaw_rate_;
}

std::string ScriptedModel::planner_reply(const std::string& prompt) const {
  auto obs = parse_observation(section_after(prompt, "**Current Game State**\n"));
  auto cmds = plan(obs);
  const bool retry = prompt.find("**Verifier feedback**") != std::string::npos;
  if (!retry && flawed(prompt)) {
    const auto& d = doctrine(obs.race);
    cmds.push_back("Build " + article(d.production) + " " + d.production);
    cmds.push_back("Build " + article(d.production) + " " + d.production);
  }
  std::string text = "Minerals " + std::to_string(obs.minerals) + ", vespene " +
                     std::to_string(obs.vespene) + ", supply unused " +
                     std::to_string(obs.supply_unused) + ".\n";
  text += cmds.empty() ? "Nothing useful can start right now.\n" : "Next steps:\n";
  json list = cmds.empty() ? json::array({"Do nothing and just wait"}) : json(cmds);
  return text + fenced(list);
}

std::string ScriptedModel::verifier_reply(const std::string& prompt) const {
  auto obs = parse_observation(section_after(prompt, "**Current Game State**\n"));
  auto cmds = commands_between(prompt, "**Given Commands**\n");
  const auto rules = section_after(prompt, "**Rules Checklist**\n");
  const auto& d = doctrine(obs.race);

  static const std::regex train(R"(^Train (\d+) (\w+) .*\[(\d+)\]$)");
  static const std::regex build(R"(^Build an? (\w+)( on .*)?$)");
  int minerals = 0, vespene = 0;
  bool supply_cmd = false;
  ParsedCost supply_cost;
  for (const auto& [name, c] : obs.costs) {
    if (ends_with(name, "_" + upper(d.supply))) supply_cost = c;
  }
  for (const auto& cmd : cmds) {
    std::smatch m;
    std::string kind;
    int n = 1;
    if (std::regex_match(cmd, m, train)) {
      kind = m[2];
      n = std::stoi(m[1]);
    } else if (std::regex_match(cmd, m, build)) {
      kind = m[1];
    } else {
      continue;
    }
    supply_cmd |= kind == d.supply;
    for (const auto& [name, c] : obs.costs) {
      if ((name.find("TRAIN") != std::string::npos || name.find("BUILD") != std::string::npos) &&
          ends_with(name, "_" + upper(kind))) {
        minerals += n * c.minerals;
        vespene += n * c.vespene;
        break;
      }
    }
  }

  std::vector<std::string> errors;
  std::string analysis;
  if (minerals > obs.minerals) {
    errors.push_back("Insufficient minerals for all commands (" + std::to_string(obs.minerals) +
                     " minerals available but need " + std::to_string(minerals) + ")");
  }
  if (vespene > obs.vespene) {
    errors.push_back("Insufficient vespene for all commands (" + std::to_string(obs.vespene) +
                     " vespene available but need " + std::to_string(vespene) + ")");
  }
  analysis += "Resources: the commands need " + std::to_string(minerals) + " minerals and " +
              std::to_string(vespene) + " vespene.\n";
  bool supply_possible = false;
  for (const auto& [id, list] : obs.abilities) {
    for (const auto& a : list) {
      if (!ends_with(a, "_" + upper(d.supply))) continue;
      if (!d.supply_is_unit) supply_possible = true;
      for (const auto& s : obs.structures) supply_possible |= s.id == id && s.larva > 0;
    }
  }
  if (rules.find("Supply is low") != std::string::npos && !supply_cmd && supply_possible &&
      supply_cost.minerals > 0 && supply_cost.minerals <= obs.minerals) {
    bool pending = false;
    for (const auto& s : obs.structures) {
      pending |= (s.kind == d.supply && s.under_construction()) ||
                 std::count(s.production.begin(), s.production.end(), d.supply) > 0;
    }
    if (!pending) {
      errors.push_back("Not building " + article(d.supply) + " " + d.supply +
                       " despite low unused supply (" + std::to_string(obs.supply_unused) +
                       ") which violates the supply rule");
    }
  }
  analysis += errors.empty() ? "All rules are satisfied.\n" : "Some rules are violated.\n";
  json errs = json::array();
  for (std::size_t i = 0; i < errors.size(); ++i) {
    errs.push_back("Error " + std::to_string(i + 1) + ": " + errors[i]);
  }
  return analysis + fenced(json{{"errors", errs}, {"error_number", errors.size()}});
}

std::string ScriptedModel::executor_reply(const std::string& prompt) const {
  auto obs = parse_observation(section_after(prompt, "**Current Game State**\n"));
  auto cmds = commands_between(prompt, "**Given Tasks**\n");
  const auto prev_at = prompt.find("**Previous attempt**\n");
  if (prev_at == std::string::npos) return execute(obs, cmds, flawed(prompt));

  const auto previous = section_after(prompt, "**Previous attempt**\n");
  const auto feedback = section_after(prompt, "**Verifier feedback**\n");
  auto extracted = protocol::extract_json(previous);
  if (!extracted.value) return execute(obs, cmds, false);
  json kept = json::array();
  std::set<std::size_t> bad;
  static const std::regex flagged(R"(Action (\d+) error)");
  for (std::sregex_iterator it(feedback.begin(), feedback.end(), flagged), end; it != end; ++it) {
    bad.insert(std::stoul((*it)[1]));
  }
  if (feedback.find("Syntax error") != std::string::npos) return execute(obs, cmds, false);
  for (std::size_t i = 0; i < extracted.value->size(); ++i) {
    if (!bad.count(i)) kept.push_back((*extracted.value)[i]);
  }
  auto drop_last = [&](auto pred) {
    for (auto i = kept.size(); i-- > 0;) {
      if (pred(kept[i].value("action", ""))) {
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
    }
    return false;
  };
  if (feedback.find("supply is not enough") != std::string::npos) {
    drop_last([](const std::string& a) { return a.find("TRAIN") != std::string::npos; });
  }
  auto over = [&] {
    int m = 0, g = 0;
    for (const auto& a : kept) {
      auto c = cost_of(obs, a.value("action", ""));
      m += c.minerals;
      g += c.vespene;
    }
    return m > obs.minerals || g > obs.vespene;
  };
  while (over() && drop_last([&](const std::string& a) {
    auto c = cost_of(obs, a);
    return c.minerals > 0 || c.vespene > 0;
  })) {
  }
  return fenced(kept);
}

std::string ScriptedModel::naive_reply(const std::string& prompt) const {
  auto obs = parse_observation(section_after(prompt, "**Current Game State**\n"));
  return execute(obs, plan(obs), flawed(prompt));
}

std::string ScriptedModel::operator()(const std::string& prompt) const {
  if (prompt.find("check if the given commands") != std::string::npos) return verifier_reply(prompt);
  if (prompt.find("StarCraft II executor") != std::string::npos) return executor_reply(prompt);
  if (prompt.find("<action_name>") != std::string::npos) return naive_reply(prompt);
  return planner_reply(prompt);
}

}  // namespace rtsarena::agent
