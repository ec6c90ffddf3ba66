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

#include <optional>
#include <string>
#include <vector>

#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::agent {

enum class RuleKind { kStatic, kConditional };

// One comparison: metric OP value, or metric OP times * other metric.
struct Clause {
  std::string metric;
  std::string op;
  double value = 0;
  std::optional<std::string> of;
  double times = 1;
};

struct Rule {
  std::string id;
  std::string text;
  RuleKind kind = RuleKind::kStatic;
  std::vector<Clause> condition;  // all must hold; empty for static rules
};

// Parses a rule-set JSON document; throws std::invalid_argument.
std::vector<Rule> parse_rulebase(std::string_view json_text);
// The shipped rule set for a faction.
const std::vector<Rule>& rulebase(sim::Faction faction);

// Metric values used by rule conditions; throws on an unknown metric name.
double rule_metric(const sim::GameState& state, sim::PlayerId player, std::string_view metric);
bool holds(const sim::GameState& state, sim::PlayerId player, const Rule& rule);

std::vector<Rule> active_rules(const sim::GameState& state, sim::PlayerId player,
                               const std::vector<Rule>& rules);
// "1. text\n2. text"
std::string format_rules(const std::vector<Rule>& rules);

}  // namespace rtsarena::agent
