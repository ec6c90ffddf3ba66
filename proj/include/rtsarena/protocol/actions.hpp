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
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::protocol {

using sim::ActionBatch;
using sim::ActionRequest;
using sim::Stage;

// Result of extract_json: the parsed array or the reason nothing parsed.
struct Extracted {
  std::optional<nlohmann::json> value;
  std::string error;
};

Extracted extract_json(std::string_view model_text);
// Same search for a value of another JSON type (object for verifier reports).
Extracted extract_json_value(std::string_view model_text, nlohmann::json::value_t type);

struct ParseResult {
  ActionBatch actions;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

ParseResult parse_actions(const nlohmann::json& raw);

// {"action": "X", "units": [1, 2], "target_unit": 9}
std::string action_line(const ActionRequest& action);
// One action per line inside brackets; "[]" when empty.
std::string serialize_actions(const ActionBatch& batch);
nlohmann::json to_json(const ActionRequest& action);

enum class Verdict { kAccepted, kRejected };

struct ValidationReport {
  Verdict verdict = Verdict::kAccepted;
  std::vector<std::string> errors;
  Stage stage = Stage::kSyntax;  // earliest failing stage; kFeasibility when accepted
  bool accepted() const { return verdict == Verdict::kAccepted; }
};

ValidationReport validate_actions(const sim::GameState& state, sim::PlayerId player,
                                  const ActionBatch& actions);

// Human-readable line for one fault, e.g. ">>>> Action 2 error: ...".
std::string describe_fault(const sim::ActionFault& fault, const ActionRequest* action);

// Full verifier pass over raw model text: extract, parse, validate.
struct ExecutorCheck {
  ActionBatch actions;
  ValidationReport report;
};
ExecutorCheck check_executor_output(const sim::GameState& state, sim::PlayerId player,
                                    std::string_view model_text);

std::string feedback_text(const ValidationReport& report);

}  // namespace rtsarena::protocol
