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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rtsarena/agent/chat.hpp"
#include "rtsarena/agent/rules.hpp"
#include "rtsarena/obs/observation.hpp"
#include "rtsarena/protocol/actions.hpp"

namespace rtsarena::agent {

inline constexpr int kMaxRounds = 3;

struct CommandPlan {
  std::string reasoning_text;
  std::vector<std::string> commands;
};

// Commands from the last fenced JSON list of strings; nullopt if none.
std::optional<CommandPlan> extract_commands(const std::string& model_text);

struct PlanVerifierReport {
  std::string analysis_text;
  std::vector<std::string> errors;
  int error_number = 0;
  std::optional<std::string> warning;  // set when the output could not be parsed
  bool accepted() const { return error_number == 0; }
};

// Unparseable output counts as acceptance with a warning.
PlanVerifierReport parse_verifier_report(const std::string& model_text);

struct CallUsage {
  int tokens_in = 0;
  int tokens_out = 0;
  int retries = 0;
};

struct PlannerRound {
  std::string prompt;
  std::string raw;
  std::vector<std::string> commands;
  bool extracted = false;
  PlanVerifierReport report;
  std::string feedback;  // text fed back to the next round
  CallUsage planner_usage;
  CallUsage verifier_usage;
  bool accepted() const { return extracted && report.accepted(); }
};

struct ExecutorRound {
  std::string prompt;
  std::string raw;
  protocol::ActionBatch actions;
  protocol::ValidationReport report;
  CallUsage usage;
};

struct DecisionTrace {
  int tick = 0;
  std::string observation;
  std::vector<std::string> rules;  // ids of active rules
  std::vector<PlannerRound> planner_chain;
  std::vector<ExecutorRound> executor_chain;
  protocol::ActionBatch final_actions;  // last executor element, before automation
  bool valid = false;                   // last executor element passed validation
  std::vector<std::string> warnings;
  std::optional<std::string> failure;   // backend error that cut the decision short
};

// Generic bounded generate/verify loop. `generate` sees all earlier rounds;
// `accepted` inspects the round just produced.
template <class Round>
std::vector<Round> self_correct(const std::function<Round(const std::vector<Round>&)>& generate,
                                const std::function<bool(const Round&)>& accepted,
                                int max_rounds = kMaxRounds) {
  std::vector<Round> chain;
  for (int i = 0; i < std::max(1, max_rounds); ++i) {
    chain.push_back(generate(chain));
    if (accepted(chain.back())) break;
  }
  return chain;
}

struct DecisionSchedule {
  bool fire = false;
  int next_forced_tick = 0;
};

inline constexpr int kDecisionMinerals = 170;
inline constexpr int kDecisionInterval = 10;
inline constexpr int kForcedInterval = 100;

DecisionSchedule should_decide(int tick, int minerals, int next_forced_tick);

struct PipelineContext {
  Backend* backend = nullptr;
  ChatParams params;
  RetryPolicy retry;
};

// One planner round: plan call, and when commands parse, one verifier call.
PlannerRound plan_round(const PipelineContext& ctx, const std::string& obs_text,
                        const std::vector<Rule>& rules, sim::Faction faction,
                        const std::vector<PlannerRound>& previous);
// One executor round validated against the live state.
ExecutorRound execute_round(const PipelineContext& ctx, const sim::GameState& state,
                            sim::PlayerId player, const std::string& obs_text,
                            const std::vector<std::string>& commands,
                            const std::vector<ExecutorRound>& previous);

// Full decision: observe, plan with self-correction, execute with
// self-correction. Never throws on backend failure.
DecisionTrace decide(const PipelineContext& ctx, const sim::GameState& state, sim::PlayerId player,
                     const obs::ActionHistory& history);

// Single call with the basic template, no verifier loop.
DecisionTrace decide_naive(const PipelineContext& ctx, const sim::GameState& state,
                           sim::PlayerId player, const obs::ActionHistory& history);

nlohmann::json to_json(const DecisionTrace& trace);

}  // namespace rtsarena::agent
