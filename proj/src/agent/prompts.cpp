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

#include "rtsarena/agent/prompts.hpp"

#include "json.hpp"
#include "rtsarena/agent/data.hpp"

namespace rtsarena::agent {

namespace {

std::string load(std::string_view name) {
  std::string s(data::file(name));
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

}  // namespace

std::string fill_template(std::string tmpl,
                          const std::vector<std::pair<std::string, std::string>>& slots) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find('{', pos);
    if (open == std::string::npos) break;
    const auto close = tmpl.find('}', open);
    if (close == std::string::npos) break;
    const auto key = tmpl.substr(open + 1, close - open - 1);
    const auto it = std::find_if(slots.begin(), slots.end(),
                                 [&](const auto& kv) { return kv.first == key; });
    out += tmpl.substr(pos, open - pos);
    if (it == slots.end()) {
      out += '{';
      pos = open + 1;
    } else {
      out += it->second;
      pos = close + 1;
    }
  }
  out += tmpl.substr(std::min(pos, tmpl.size()));
  return out;
}

std::string plan_example(sim::Faction f) {
  switch (f) {
    case sim::Faction::F1: return load("prompts/examples_terran.txt");
    case sim::Faction::F2: return load("prompts/examples_zerg.txt");
    case sim::Faction::F3: return load("prompts/examples_protoss.txt");
  }
  return "";
}

std::string format_commands(const std::vector<std::string>& commands) {
  if (commands.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < commands.size(); ++i) {
    out += "    " + nlohmann::json(commands[i]).dump() + (i + 1 < commands.size() ? ",\n" : "\n");
  }
  return out + "]";
}

std::string build_planner_prompt(const std::string& obs_text, const std::vector<Rule>& rules,
                                 const std::string& examples) {
  return fill_template(load("prompts/planner.txt"), {{"obs_text", obs_text},
                                                     {"rules_list", format_rules(rules)},
                                                     {"plan_example", examples}});
}

std::string build_plan_verifier_prompt(const std::string& obs_text,
                                       const std::vector<std::string>& commands,
                                       const std::vector<Rule>& rules) {
  return fill_template(load("prompts/plan_verifier.txt"),
                       {{"obs_text", obs_text},
                        {"given_command", format_commands(commands)},
                        {"rules_list", format_rules(rules)}});
}

std::string build_executor_prompt(const std::string& obs_text,
                                  const std::vector<std::string>& commands) {
  return fill_template(load("prompts/executor.txt"),
                       {{"obs_text", obs_text}, {"plan_text", format_commands(commands)}});
}

std::string build_naive_prompt(const std::string& obs_text, const std::vector<Rule>& rules) {
  return fill_template(load("prompts/naive.txt"),
                       {{"obs_text", obs_text}, {"rules_list", format_rules(rules)}});
}

std::string build_retry_prompt(const std::string& base, const std::string& previous,
                               const std::string& feedback) {
  return base + fill_template(load("prompts/retry.txt"),
                              {{"previous", previous}, {"feedback", feedback}});
}

}  // namespace rtsarena::agent
