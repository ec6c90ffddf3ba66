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

#include "rtsarena/agent/pipeline.hpp"

#include "rtsarena/agent/prompts.hpp"
#include "rtsarena/sim/policy.hpp"

namespace rtsarena::agent {

using nlohmann::json;

namespace {

// Text ahead of the final fenced block (or of the last `open` bracket).
std::string prose_before_json(const std::string& text, char open) {
  std::size_t cut = std::string::npos;
  const auto close = text.rfind("```");
  if (close != std::string::npos && close > 0) cut = text.rfind("```", close - 1);
  if (cut == std::string::npos) cut = text.rfind(open);
  std::string out = text.substr(0, cut == std::string::npos ? text.size() : cut);
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
  return out;
}

}  // namespace

std::optional<CommandPlan> extract_commands(const std::string& text) {
  const auto e = protocol::extract_json(text);
  if (!e.value) return std::nullopt;
  CommandPlan plan;
  for (const auto& c : *e.value) {
    if (!c.is_string()) return std::nullopt;
    plan.commands.push_back(c.get<std::string>());
  }
  plan.reasoning_text = prose_before_json(text, '[');
  return plan;
}

PlanVerifierReport parse_verifier_report(const std::string& text) {
  PlanVerifierReport r;
  const auto e = protocol::extract_json_value(text, json::value_t::object);
  auto give_up = [&](std::string why) {
    r.errors.clear();
    r.error_number = 0;
    r.warning = "verifier output ignored: " + why;
    return r;
  };
  if (!e.value) return give_up("no JSON report found");
  const auto& j = *e.value;
  if (!j.contains("errors") || !j["errors"].is_array()) return give_up("missing errors list");
  for (const auto& err : j["errors"]) {
    if (!err.is_string()) return give_up("non-string error entry");
    r.errors.push_back(err.get<std::string>());
  }
  r.error_number = static_cast<int>(r.errors.size());
  r.analysis_text = prose_before_json(text, '{');
  return r;
}

DecisionSchedule should_decide(int tick, int minerals, int next_forced_tick) {
  if (tick >= next_forced_tick) return {true, tick + kForcedInterval};
  if (minerals > kDecisionMinerals && tick % kDecisionInterval == 0) return {true, next_forced_tick};
  return {false, next_forced_tick};
}

namespace {

CallUsage usage_of(const ChatResult& r) {
  return {r.tokens_in, r.tokens_out, static_cast<int>(r.retries.size())};
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += (out.empty() ? "" : "\n") + l;
  return out;
}

}  // namespace

PlannerRound plan_round(const PipelineContext& ctx, const std::string& obs_text,
                        const std::vector<Rule>& rules, sim::Faction faction,
                        const std::vector<PlannerRound>& previous) {
  PlannerRound round;
  const auto base = build_planner_prompt(obs_text, rules, plan_example(faction));
  round.prompt = previous.empty()
                     ? base
                     : build_retry_prompt(base, previous.back().raw, previous.back().feedback);
  const auto reply = chat(*ctx.backend, round.prompt, ctx.params, ctx.retry);
  round.raw = reply.text;
  round.planner_usage = usage_of(reply);
  const auto plan = extract_commands(round.raw);
  if (!plan) {
    round.feedback = "output was not a valid command list";
    round.report.errors = {round.feedback};
    round.report.error_number = 1;
    return round;
  }
  round.extracted = true;
  round.commands = plan->commands;
  const auto verdict =
      chat(*ctx.backend, build_plan_verifier_prompt(obs_text, round.commands, rules), ctx.params,
           ctx.retry);
  round.verifier_usage = usage_of(verdict);
  round.report = parse_verifier_report(verdict.text);
  round.feedback = join_lines(round.report.errors);
  return round;
}

ExecutorRound execute_round(const PipelineContext& ctx, const sim::GameState& state,
                            sim::PlayerId player, const std::string& obs_text,
                            const std::vector<std::string>& commands,
                            const std::vector<ExecutorRound>& previous) {
  ExecutorRound round;
  const auto base = build_executor_prompt(obs_text, commands);
  round.prompt = previous.empty() ? base
                                  : build_retry_prompt(base, previous.back().raw,
                                                       protocol::feedback_text(previous.back().report));
  const auto reply = chat(*ctx.backend, round.prompt, ctx.params, ctx.retry);
  round.raw = reply.text;
  round.usage = usage_of(reply);
  auto check = protocol::check_executor_output(state, player, round.raw);
  round.actions = std::move(check.actions);
  round.report = std::move(check.report);
  return round;
}

namespace {

DecisionTrace begin(const sim::GameState& state, sim::PlayerId player,
                    const obs::ActionHistory& history, std::vector<Rule>* rules) {
  DecisionTrace t;
  t.tick = state.tick;
  t.observation = obs::render_observation(state, player, history).full_text;
  *rules = active_rules(state, player, rulebase(state.player(player).faction));
  for (const auto& r : *rules) t.rules.push_back(r.id);
  return t;
}

void fail(DecisionTrace& t, const ChatError& e) {
  t.failure = std::string(chat_error_name(e.kind())) + ": " + e.what();
  ExecutorRound none;
  none.raw = "";
  none.report = {protocol::Verdict::kRejected, {"backend unavailable"}, sim::Stage::kSyntax};
  if (t.planner_chain.empty()) {
    PlannerRound p;
    p.feedback = *t.failure;
    t.planner_chain.push_back(p);
  }
  t.executor_chain = {none};
  t.final_actions.clear();
  t.valid = false;
}

}  // namespace

DecisionTrace decide(const PipelineContext& ctx, const sim::GameState& state, sim::PlayerId player,
                     const obs::ActionHistory& history) {
  std::vector<Rule> rules;
  DecisionTrace t = begin(state, player, history, &rules);
  const auto faction = state.player(player).faction;
  try {
    t.planner_chain = self_correct<PlannerRound>(
        [&](const std::vector<PlannerRound>& prev) {
          return plan_round(ctx, t.observation, rules, faction, prev);
        },
        [](const PlannerRound& r) { return r.accepted(); });
    for (const auto& r : t.planner_chain) {
      if (r.report.warning) t.warnings.push_back(*r.report.warning);
    }
    const auto& commands = t.planner_chain.back().commands;
    if (commands.empty()) {
      ExecutorRound wait;
      wait.raw = "[]";
      wait.report.stage = sim::Stage::kFeasibility;
      t.executor_chain = {wait};
    } else {
      t.executor_chain = self_correct<ExecutorRound>(
          [&](const std::vector<ExecutorRound>& prev) {
            return execute_round(ctx, state, player, t.observation, commands, prev);
          },
          [](const ExecutorRound& r) { return r.report.accepted(); });
    }
  } catch (const ChatError& e) {
    fail(t, e);
    return t;
  }
  t.final_actions = t.executor_chain.back().actions;
  t.valid = t.executor_chain.back().report.accepted();
  return t;
}

DecisionTrace decide_naive(const PipelineContext& ctx, const sim::GameState& state,
                           sim::PlayerId player, const obs::ActionHistory& history) {
  std::vector<Rule> rules;
  DecisionTrace t = begin(state, player, history, &rules);
  try {
    ExecutorRound round;
    round.prompt = build_naive_prompt(t.observation, rules);
    const auto reply = chat(*ctx.backend, round.prompt, ctx.params, ctx.retry);
    round.raw = reply.text;
    round.usage = usage_of(reply);
    auto check = protocol::check_executor_output(state, player, round.raw);
    round.actions = std::move(check.actions);
    round.report = std::move(check.report);
    t.executor_chain = {round};
  } catch (const ChatError& e) {
    fail(t, e);
    return t;
  }
  t.valid = t.executor_chain.back().report.accepted();
  // Invalid output is dropped rather than submitted.
  if (t.valid) t.final_actions = t.executor_chain.back().actions;
  return t;
}

namespace {

json usage_json(const CallUsage& u) {
  return {{"tokens_in", u.tokens_in}, {"tokens_out", u.tokens_out}, {"retries", u.retries}};
}

json batch_json(const protocol::ActionBatch& b) {
  json a = json::array();
  for (const auto& x : b) a.push_back(protocol::to_json(x));
  return a;
}

}  // namespace

json to_json(const DecisionTrace& t) {
  json planner = json::array();
  for (const auto& r : t.planner_chain) {
    planner.push_back({{"prompt", r.prompt},
                       {"raw", r.raw},
                       {"commands", r.commands},
                       {"extracted", r.extracted},
                       {"errors", r.report.errors},
                       {"error_number", r.report.error_number},
                       {"accepted", r.accepted()},
                       {"feedback", r.feedback},
                       {"planner_usage", usage_json(r.planner_usage)},
                       {"verifier_usage", usage_json(r.verifier_usage)}});
  }
  json executor = json::array();
  for (const auto& r : t.executor_chain) {
    executor.push_back({{"prompt", r.prompt},
                        {"raw", r.raw},
                        {"actions", batch_json(r.actions)},
                        {"accepted", r.report.accepted()},
                        {"stage", sim::stage_name(r.report.stage)},
                        {"errors", r.report.errors},
                        {"usage", usage_json(r.usage)}});
  }
  json j = {{"tick", t.tick},
            {"observation", t.observation},
            {"rules", t.rules},
            {"planner_chain", planner},
            {"executor_chain", executor},
            {"final_actions", batch_json(t.final_actions)},
            {"valid", t.valid},
            {"warnings", t.warnings}};
  if (t.failure) j["failure"] = *t.failure;
  return j;
}

}  // namespace rtsarena::agent
