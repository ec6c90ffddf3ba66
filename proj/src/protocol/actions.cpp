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

#include "rtsarena/protocol/actions.hpp"

#include <algorithm>
#include <sstream>

namespace rtsarena::protocol {

using nlohmann::json;
using sim::Catalog;
using sim::Fault;

namespace {

std::string prefix(std::size_t index) { return ">>>> Action " + std::to_string(index) + " error: "; }

// Raw line breaks inside string literals are common in model output.
std::string fold_string_breaks(std::string_view text) {
  std::string out;
  bool in_string = false, escaped = false;
  for (char c : text) {
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      } else if (c == '\n' || c == '\r' || c == '\t') {
        if (!out.empty() && out.back() == ' ') continue;
        c = ' ';
      }
    } else if (c == '"') {
      in_string = true;
    }
    if (in_string && c == ' ' && !out.empty() && out.back() == ' ') continue;
    out += c;
  }
  return out;
}

std::optional<json> try_value(std::string_view text, json::value_t type, std::string* error) {
  for (int pass = 0; pass < 2; ++pass) {
    try {
      json j = pass == 0 ? json::parse(text.begin(), text.end()) : json::parse(fold_string_breaks(text));
      if (j.type() == type) return j;
      if (error) {
        *error = type == json::value_t::array ? "the JSON value is not a list of actions"
                                              : "the JSON value has the wrong type";
      }
      return std::nullopt;
    } catch (const json::parse_error& e) {
      if (error && pass == 0) *error = e.what();
    }
  }
  return std::nullopt;
}

std::vector<std::string_view> fenced_blocks(std::string_view text) {
  std::vector<std::string_view> blocks;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    auto body = text.find('\n', open + 3);
    const auto close = text.find("```", open + 3);
    if (close == std::string_view::npos) break;
    if (body == std::string_view::npos || body > close) body = open + 2;
    blocks.push_back(text.substr(body + 1, close - body - 1));
    pos = close + 3;
  }
  return blocks;
}

// Top-level bracket-balanced substrings, skipping brackets inside strings.
std::vector<std::string_view> balanced(std::string_view text, char open_c, char close_c) {
  std::vector<std::string_view> out;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"' && depth > 0) {
      in_string = true;
    } else if (c == open_c) {
      if (depth++ == 0) start = i;
    } else if (c == close_c && depth > 0) {
      if (--depth == 0) out.push_back(text.substr(start, i - start + 1));
    }
  }
  return out;
}

bool is_id(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

}  // namespace

Extracted extract_json_value(std::string_view text, json::value_t type) {
  const auto blocks = fenced_blocks(text);
  std::string last_error;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    if (auto j = try_value(*it, type, last_error.empty() ? &last_error : nullptr)) return {j, ""};
  }
  const bool array = type == json::value_t::array;
  const auto candidates = balanced(text, array ? '[' : '{', array ? ']' : '}');
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    if (auto j = try_value(*it, type, nullptr)) return {j, ""};
  }
  if (!last_error.empty()) return {std::nullopt, ">>>> Syntax error: " + last_error};
  return {std::nullopt, array ? ">>>> Syntax error: no JSON list of actions found in the response"
                              : ">>>> Syntax error: no JSON object found in the response"};
}

Extracted extract_json(std::string_view text) {
  return extract_json_value(text, json::value_t::array);
}

ParseResult parse_actions(const json& raw) {
  ParseResult r;
  if (!raw.is_array()) {
    r.errors.push_back(">>>> Syntax error: the response must be a JSON list of actions");
    return r;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const json& e = raw[i];
    const std::size_t before = r.errors.size();
    auto fail = [&](const std::string& msg) { r.errors.push_back(prefix(i) + msg); };
    if (!e.is_object()) {
      fail("element is not an object");
      continue;
    }
    ActionRequest a;
    for (const auto& [key, value] : e.items()) {
      if (key != "action" && key != "units" && key != "target_unit" && key != "target_position") {
        fail("unknown key \"" + key + "\"");
      }
    }
    if (!e.contains("action")) {
      fail("missing key \"action\"");
    } else if (!e["action"].is_string()) {
      fail("\"action\" must be a string");
    } else {
      a.action = e["action"].get<std::string>();
    }
    if (!e.contains("units")) {
      fail("missing key \"units\"");
    } else if (!e["units"].is_array() ||
               !std::all_of(e["units"].begin(), e["units"].end(), is_id)) {
      fail("\"units\" must be a list of unit ids");
    } else if (e["units"].empty()) {
      fail("units must be non-empty");
    } else {
      for (const auto& u : e["units"]) a.units.push_back(u.get<sim::UnitId>());
    }
    const bool has_unit = e.contains("target_unit") && !e["target_unit"].is_null();
    const bool has_pos = e.contains("target_position") && !e["target_position"].is_null();
    if (has_unit) {
      if (is_id(e["target_unit"])) {
        a.target_unit = e["target_unit"].get<sim::UnitId>();
      } else {
        fail("\"target_unit\" must be a unit id");
      }
    }
    if (has_pos) {
      const json& p = e["target_position"];
      if (p.is_array() && p.size() == 2 && p[0].is_number_integer() && p[1].is_number_integer()) {
        a.target_position = sim::Cell{p[0].get<int>(), p[1].get<int>()};
      } else {
        fail("\"target_position\" must be [x, y] with integer coordinates");
      }
    }
    if (has_unit && has_pos) fail("only one of target_unit and target_position may be given");
    if (r.errors.size() == before) r.actions.push_back(std::move(a));
  }
  if (!r.ok()) r.actions.clear();
  return r;
}

json to_json(const ActionRequest& a) {
  json j = json::object();
  j["action"] = a.action;
  j["units"] = a.units;
  if (a.target_unit) j["target_unit"] = *a.target_unit;
  if (a.target_position) j["target_position"] = {a.target_position->x, a.target_position->y};
  return j;
}

std::string action_line(const ActionRequest& a) {
  std::ostringstream os;
  os << "{\"action\": " << json(a.action).dump() << ", \"units\": [";
  for (std::size_t i = 0; i < a.units.size(); ++i) os << (i ? ", " : "") << a.units[i];
  os << "]";
  if (a.target_unit) os << ", \"target_unit\": " << *a.target_unit;
  if (a.target_position) {
    os << ", \"target_position\": [" << a.target_position->x << ", " << a.target_position->y
       << "]";
  }
  os << "}";
  return os.str();
}

std::string serialize_actions(const ActionBatch& batch) {
  if (batch.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out += "    " + action_line(batch[i]) + (i + 1 < batch.size() ? ",\n" : "\n");
  }
  return out + "]";
}

std::string describe_fault(const sim::ActionFault& f, const ActionRequest* action) {
  const std::string ability = action ? action->action : "";
  const std::string unit = std::to_string(f.unit);
  const std::string head = prefix(f.index);
  switch (f.code) {
    case Fault::kUnknownAbility:
      return head + "unknown ability " + ability;
    case Fault::kUnitNotOwned:
      return head + "unit " + unit + " is not an own live unit";
    case Fault::kDuplicateUnit:
      return head + "unit " + unit + " is used by more than one action";
    case Fault::kAbilityUnavailable:
      return head + "unit " + unit + " cannot use " + ability + " now";
    case Fault::kTargetSignature:
      return head + ability + " expects target " + f.detail;
    case Fault::kTargetUnitInvalid:
      return head + "target unit " + unit + " " + f.detail;
    case Fault::kTargetPositionOutOfBounds: {
      const auto& p = action->target_position;
      return head + "target position (" + std::to_string(p ? p->x : 0) + ", " +
             std::to_string(p ? p->y : 0) + ") is outside the map";
    }
    case Fault::kSingleUnitRequired:
      return head + ability + " must be given exactly one unit";
    case Fault::kQueueFull:
      return head + "production list of unit " + unit + " is full";
    case Fault::kBusy:
      return head + "unit " + unit + " is busy";
    case Fault::kPlacementBlocked:
      return head + "cannot place structure, " + f.detail;
    case Fault::kUnpowered:
      return head + (f.unit ? "unit " + unit + " is not powered" : f.detail);
    case Fault::kNoLarva:
      return head + "unit " + unit + " has no larva";
    case Fault::kEnergy:
      return head + "unit " + unit + " does not have " + f.detail + " energy";
    case Fault::kResearchInProgress:
      return head + f.detail + " is already being researched";
    case Fault::kMinerals:
      return ">>>> Total actions error: minerals is not enough for executing all actions";
    case Fault::kVespene:
      return ">>>> Total actions error: vespene is not enough for executing all actions";
    case Fault::kSupply:
      return ">>>> Total actions error: supply is not enough for executing all actions";
  }
  return head + "invalid action";
}

ValidationReport validate_actions(const sim::GameState& state, sim::PlayerId player,
                                  const ActionBatch& actions) {
  ValidationReport report;
  report.stage = Stage::kFeasibility;
  sim::BatchChecker checker(state, player);
  std::vector<sim::ActionFault> faults;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    auto f = checker.check(actions[i], i);
    faults.insert(faults.end(), f.begin(), f.end());
  }
  const auto totals = checker.finish();
  faults.insert(faults.end(), totals.begin(), totals.end());
  for (const auto& f : faults) {
    const ActionRequest* a = f.index < actions.size() ? &actions[f.index] : nullptr;
    report.errors.push_back(describe_fault(f, a));
    if (sim::fault_stage(f.code) < report.stage) report.stage = sim::fault_stage(f.code);
  }
  if (!report.errors.empty()) report.verdict = Verdict::kRejected;
  return report;
}

ExecutorCheck check_executor_output(const sim::GameState& state, sim::PlayerId player,
                                    std::string_view text) {
  ExecutorCheck out;
  auto extracted = extract_json(text);
  if (!extracted.value) {
    out.report = {Verdict::kRejected, {extracted.error}, Stage::kSyntax};
    return out;
  }
  auto parsed = parse_actions(*extracted.value);
  if (!parsed.ok()) {
    out.report = {Verdict::kRejected, parsed.errors, Stage::kSyntax};
    return out;
  }
  out.actions = std::move(parsed.actions);
  out.report = validate_actions(state, player, out.actions);
  return out;
}

std::string feedback_text(const ValidationReport& report) {
  std::string out;
  for (const auto& e : report.errors) {
    if (!out.empty()) out += '\n';
    out += e;
  }
  return out;
}

}  // namespace rtsarena::protocol
