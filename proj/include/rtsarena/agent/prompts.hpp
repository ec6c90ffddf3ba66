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

#include <string>
#include <vector>

#include "rtsarena/agent/rules.hpp"

namespace rtsarena::agent {

// Replaces every "{name}" slot; unknown slots are left untouched.
std::string fill_template(std::string tmpl,
                          const std::vector<std::pair<std::string, std::string>>& slots);

std::string plan_example(sim::Faction faction);

std::string build_planner_prompt(const std::string& obs_text, const std::vector<Rule>& rules,
                                 const std::string& examples);
std::string build_plan_verifier_prompt(const std::string& obs_text,
                                       const std::vector<std::string>& commands,
                                       const std::vector<Rule>& rules);
std::string build_executor_prompt(const std::string& obs_text,
                                  const std::vector<std::string>& commands);
std::string build_naive_prompt(const std::string& obs_text, const std::vector<Rule>& rules);
// Base prompt plus the previous answer and the verifier feedback.
std::string build_retry_prompt(const std::string& base, const std::string& previous,
                               const std::string& feedback);

// The commands as the pretty JSON list the planner was asked to produce.
std::string format_commands(const std::vector<std::string>& commands);

}  // namespace rtsarena::agent
