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

#include "rtsarena/agent/rules.hpp"

#include <stdexcept>

#include "json.hpp"
#include "rtsarena/agent/data.hpp"

namespace rtsarena::agent {

using nlohmann::json;

std::vector<Rule> parse_rulebase(std::string_view text) {
  std::vector<Rule> out;
  try {
    const json doc = json::parse(text);
    for (const auto& r : doc.at("rules")) {
      Rule rule;
      rule.id = r.at("id").get<std::string>();
      rule.text = r.at("text").get<std::string>();
      for (const auto& c : r.value("when", json::array())) {
        Clause clause;
        clause.metric = c.at("metric").get<std::string>();
        clause.op = c.at("op").get<std::string>();
        if (c.contains("of")) {
          clause.of = c["of"].get<std::string>();
          clause.times = c.value("times", 1.0);
        } else {
          clause.value = c.at("value").get<double>();
        }
        if (clause.op != "<" && clause.op != "<=" && clause.op != ">" && clause.op != ">=" &&
            clause.op != "==") {
          throw std::invalid_argument("bad operator " + clause.op + " in rule " + rule.id);
        }
        rule.condition.push_back(std::move(clause));
      }
      rule.kind = rule.condition.empty() ? RuleKind::kStatic : RuleKind::kConditional;
      out.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed rule set: ") + e.what());
  }
  return out;
}

const std::vector<Rule>& rulebase(sim::Faction f) {
  static const std::vector<Rule> terran = parse_rulebase(data::file("rules/terran.json"));
  static const std::vector<Rule> zerg = parse_rulebase(data::file("rules/zerg.json"));
  static const std::vector<Rule> protoss = parse_rulebase(data::file("rules/protoss.json"));
  switch (f) {
    case sim::Faction::F1: return terran;
    case sim::Faction::F2: return zerg;
    case sim::Faction::F3: return protoss;
  }
  return protoss;
}

namespace {

bool produces(const sim::ProductionItem& item, std::string_view name) {
  const auto& a = sim::Catalog::get().ability(item.ability);
  return a.produces == name || a.tech == name;
}

}  // namespace

double rule_metric(const sim::GameState& s, sim::PlayerId p, std::string_view metric) {
  const auto& ps = s.player(p);
  if (metric == "supply_unused") return ps.supply_unused;
  if (metric == "supply_cap") return ps.supply_cap;
  if (metric == "minerals") return ps.minerals;
  if (metric == "vespene") return ps.vespene;
  if (metric == "game_seconds") return s.tick / s.config.ticks_per_game_second;
  if (metric == "unpowered") {
    int n = 0;
    for (const auto& [id, u] : s.units) {
      if (u.owner == p && sim::kind_of(u).needs_power && !sim::powered(s, p, u.pos)) ++n;
    }
    return n;
  }
  const auto colon = metric.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("unknown rule metric " + std::string(metric));
  }
  const auto head = metric.substr(0, colon);
  const auto name = metric.substr(colon + 1);
  if (head == "tech") return ps.has_tech(name) ? 1 : 0;
  double n = 0;
  for (const auto& [id, u] : s.units) {
    if (u.owner != p) continue;
    const bool match = sim::kind_of(u).name == name;
    if (head == "count") {
      n += match;
    } else if (head == "complete") {
      n += match && u.complete();
    } else if (head == "idle") {
      n += match && u.complete() && u.queue.empty();
    } else if (head == "max_energy") {
      if (match) n = std::max(n, static_cast<double>(u.energy.current));
    } else if (head == "producing") {
      for (const auto& item : u.queue) n += produces(item, name);
    } else {
      throw std::invalid_argument("unknown rule metric " + std::string(metric));
    }
  }
  return n;
}

bool holds(const sim::GameState& s, sim::PlayerId p, const Rule& rule) {
  for (const auto& c : rule.condition) {
    const double lhs = rule_metric(s, p, c.metric);
    const double rhs = c.of ? c.times * rule_metric(s, p, *c.of) : c.value;
    bool ok = false;
    if (c.op == "<") ok = lhs < rhs;
    if (c.op == "<=") ok = lhs <= rhs;
    if (c.op == ">") ok = lhs > rhs;
    if (c.op == ">=") ok = lhs >= rhs;
    if (c.op == "==") ok = lhs == rhs;
    if (!ok) return false;
  }
  return true;
}

std::vector<Rule> active_rules(const sim::GameState& s, sim::PlayerId p,
                               const std::vector<Rule>& rules) {
  std::vector<Rule> out;
  for (const auto& r : rules) {
    if (holds(s, p, r)) out.push_back(r);
  }
  return out;
}

std::string format_rules(const std::vector<Rule>& rules) {
  std::string out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i) out += '\n';
    out += std::to_string(i + 1) + ". " + rules[i].text;
  }
  return out;
}

}  // namespace rtsarena::agent
