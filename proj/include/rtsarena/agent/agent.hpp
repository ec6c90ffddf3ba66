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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rtsarena/agent/pipeline.hpp"
#include "rtsarena/agent/scripted_model.hpp"
#include "rtsarena/obs/observation.hpp"

namespace rtsarena::agent {

struct AgentStep {
  sim::ActionBatch actions;
  std::size_t decision_actions = 0;  // leading entries that came from a decision
  std::optional<DecisionTrace> trace;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual AgentStep act(const sim::GameState& state, sim::PlayerId player) = 0;
  // Indices of `step.actions` the kernel executed.
  virtual void on_executed(const AgentStep& step, const std::vector<std::size_t>& executed) {
    (void)step;
    (void)executed;
  }
};

class BuiltinAgent : public Agent {
 public:
  explicit BuiltinAgent(int level);
  std::string name() const override;
  AgentStep act(const sim::GameState& state, sim::PlayerId player) override;

 private:
  int level_;
};

enum class AgentMode { kFull, kNaive };

class LlmAgent : public Agent {
 public:
  LlmAgent(std::string name, AgentMode mode, PipelineContext ctx);
  std::string name() const override { return name_; }
  AgentStep act(const sim::GameState& state, sim::PlayerId player) override;
  void on_executed(const AgentStep& step, const std::vector<std::size_t>& executed) override;

  const obs::ActionHistory& history() const { return history_; }
  int next_forced_tick() const { return next_forced_; }

 private:
  std::string name_;
  AgentMode mode_;
  PipelineContext ctx_;
  obs::ActionHistory history_{};
  int next_forced_ = 0;
};

// Rule-driven player that reads the same text observation as the model
// agents but answers without any chat calls.
class ScriptedAgent : public Agent {
 public:
  explicit ScriptedAgent(double flaw_rate = 0.0);
  std::string name() const override { return "scripted"; }
  AgentStep act(const sim::GameState& state, sim::PlayerId player) override;
  void on_executed(const AgentStep& step, const std::vector<std::size_t>& executed) override;

 private:
  ScriptedModel model_;
  obs::ActionHistory history_{};
  int next_forced_ = 0;
};

}  // namespace rtsarena::agent
