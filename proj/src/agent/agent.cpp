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

#include "rtsarena/agent/agent.hpp"

#include "rtsarena/protocol/actions.hpp"
#include "rtsarena/sim/policy.hpp"

namespace rtsarena::agent {

BuiltinAgent::BuiltinAgent(int level) : level_(level) { sim::builtin_params(level); }

std::string BuiltinAgent::name() const { return "builtin-L" + std::to_string(level_); }

AgentStep BuiltinAgent::act(const sim::GameState& state, sim::PlayerId player) {
  return AgentStep{sim::builtin_policy(state, player, level_), 0, std::nullopt};
}

LlmAgent::LlmAgent(std::string name, AgentMode mode, PipelineContext ctx)
    : name_(std::move(name)), mode_(mode), ctx_(ctx) {}

AgentStep LlmAgent::act(const sim::GameState& state, sim::PlayerId player) {
  AgentStep step;
  const auto schedule = should_decide(state.tick, state.player(player).minerals, next_forced_);
  next_forced_ = schedule.next_forced_tick;
  if (schedule.fire) {
    auto trace = mode_ == AgentMode::kFull ? decide(ctx_, state, player, history_)
                                           : decide_naive(ctx_, state, player, history_);
    step.actions = trace.final_actions;
    step.decision_actions = step.actions.size();
    step.trace = std::move(trace);
  }
  sim::merge_uncommanded(step.actions, sim::auto_micro(state, player));
  return step;
}

void LlmAgent::on_executed(const AgentStep& step, const std::vector<std::size_t>& executed) {
  for (auto i : executed) {
    if (i < step.decision_actions) history_.push(step.actions[i]);
  }
}

ScriptedAgent::ScriptedAgent(double flaw_rate) : model_(flaw_rate) {}

AgentStep ScriptedAgent::act(const sim::GameState& state, sim::PlayerId player) {
  AgentStep step;
  const auto schedule = should_decide(state.tick, state.player(player).minerals, next_forced_);
  next_forced_ = schedule.next_forced_tick;
  if (schedule.fire) {
    const auto text = obs::render_observation(state, player, history_).full_text;
    const auto obs = parse_observation(text);
    const auto reply = model_.execute(obs, model_.plan(obs), false);
    if (auto raw = protocol::extract_json(reply); raw.value) {
      auto parsed = protocol::parse_actions(*raw.value);
      if (parsed.ok()) step.actions = std::move(parsed.actions);
    }
    step.decision_actions = step.actions.size();
  }
  sim::merge_uncommanded(step.actions, sim::auto_micro(state, player));
  return step;
}

void ScriptedAgent::on_executed(const AgentStep& step, const std::vector<std::size_t>& executed) {
  for (auto i : executed) {
    if (i < step.decision_actions) history_.push(step.actions[i]);
  }
}

}  // namespace rtsarena::agent
