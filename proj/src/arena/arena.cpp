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

#include "rtsarena/arena/arena.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "rtsarena/agent/scripted_model.hpp"
#include "rtsarena/common/rng.hpp"
#include "rtsarena/dataset/dataset.hpp"
#include "rtsarena/protocol/actions.hpp"
#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::arena {

using nlohmann::json;
using sim::ConfigError;

namespace {

const std::vector<std::pair<Mode, std::string_view>> kModes = {
    {Mode::kMatch, "match"},     {Mode::kTournament, "tournament"},
    {Mode::kMetrics, "metrics"}, {Mode::kDataset, "dataset"},
    {Mode::kReplayVerify, "replay-verify"},
};

const std::set<std::string> kKinds = {"starevolve", "naive", "scripted", "builtin"};

// Reads `key` from `j` into `out` when present; type errors become ConfigError.
template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

void allow_only(const json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw ConfigError("unknown key " + where + "." + k);
  }
}

sim::Faction faction_from(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + " must be a string");
  const auto f = sim::parse_faction(j.get<std::string>());
  if (!f) throw ConfigError(where + ": unknown faction " + j.get<std::string>());
  return *f;
}

std::string default_name(const AgentSpec& a) {
  return a.kind == "builtin" ? "builtin-L" + std::to_string(a.level) : a.kind;
}

}  // namespace

std::string_view mode_name(Mode m) {
  for (const auto& [mode, name] : kModes) {
    if (mode == m) return name;
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (const auto& [mode, name] : kModes) {
    if (name == s) return mode;
  }
  return std::nullopt;
}

json to_json(const sim::MatchConfig& c) {
  json levels = json::array();
  for (const auto& l : c.builtin_difficulty) levels.push_back(l ? json(*l) : json(nullptr));
  return {{"map_width", c.map_width},
          {"map_height", c.map_height},
          {"factions", {sim::faction_id(c.factions[0]), sim::faction_id(c.factions[1])}},
          {"builtin_difficulty", levels},
          {"seed", c.seed},
          {"max_ticks", c.max_ticks},
          {"ticks_per_game_second", c.ticks_per_game_second}};
}

sim::MatchConfig match_config_from_json(const json& j) {
  const std::string where = "match";
  allow_only(j, {"map_width", "map_height", "factions", "builtin_difficulty", "seed", "max_ticks",
                 "ticks_per_game_second"},
             where);
  sim::MatchConfig c;
  read(j, "map_width", c.map_width, where);
  read(j, "map_height", c.map_height, where);
  read(j, "seed", c.seed, where);
  read(j, "max_ticks", c.max_ticks, where);
  read(j, "ticks_per_game_second", c.ticks_per_game_second, where);
  if (j.contains("factions")) {
    const auto& f = j["factions"];
    if (!f.is_array() || f.size() != 2) throw ConfigError("match.factions must list two factions");
    c.factions = {faction_from(f[0], "match.factions[0]"), faction_from(f[1], "match.factions[1]")};
  }
  if (j.contains("builtin_difficulty")) {
    const auto& b = j["builtin_difficulty"];
    if (!b.is_array() || b.size() != 2) throw ConfigError("match.builtin_difficulty must have two entries");
    for (int i = 0; i < 2; ++i) {
      if (b[i].is_null()) continue;
      if (!b[i].is_number_integer()) throw ConfigError("match.builtin_difficulty entries must be integers");
      c.builtin_difficulty[i] = b[i].get<int>();
    }
  }
  return c;
}

json to_json(const AgentSpec& a) {
  json j = {{"name", a.name}, {"kind", a.kind}, {"faction", sim::faction_id(a.faction)}};
  if (a.kind == "builtin") j["level"] = a.level;
  if (a.kind == "scripted") j["flaw_rate"] = a.flaw_rate;
  if (a.kind == "starevolve" || a.kind == "naive") {
    json b = {{"type", a.backend.type}};
    if (a.backend.type == "scripted") b["flaw_rate"] = a.backend.flaw_rate;
    if (a.backend.type == "canned") b["path"] = a.backend.path;
    if (a.backend.type == "http") {
      b["endpoint"] = a.backend.endpoint;
      b["model"] = a.backend.model;
    }
    j["backend"] = b;
  }
  return j;
}

RunConfig config_from_json(const json& j) {
  allow_only(j, {"mode", "agents", "match", "repetitions", "seed", "out", "jobs", "generation", "retry",
                 "inputs"},
             "config");
  RunConfig c;
  if (j.contains("mode")) {
    std::string m;
    read(j, "mode", m, "config");
    const auto mode = parse_mode(m);
    if (!mode) throw ConfigError("unknown mode " + m);
    c.mode = *mode;
  }
  read(j, "repetitions", c.repetitions, "config");
  read(j, "seed", c.seed, "config");
  read(j, "jobs", c.jobs, "config");
  if (j.contains("out")) {
    std::string out;
    read(j, "out", out, "config");
    c.out = out;
  }
  if (j.contains("inputs")) {
    std::vector<std::string> in;
    read(j, "inputs", in, "config");
    c.inputs.assign(in.begin(), in.end());
  }
  if (j.contains("match")) c.match = match_config_from_json(j["match"]);
  if (j.contains("generation")) {
    const auto& g = j["generation"];
    const std::string w = "generation";
    allow_only(g, {"max_new_tokens", "temperature", "top_p", "top_k", "repetition_penalty", "presence_penalty"}, w);
    read(g, "max_new_tokens", c.generation.max_new_tokens, w);
    read(g, "temperature", c.generation.temperature, w);
    read(g, "top_p", c.generation.top_p, w);
    read(g, "top_k", c.generation.top_k, w);
    read(g, "repetition_penalty", c.generation.repetition_penalty, w);
    read(g, "presence_penalty", c.generation.presence_penalty, w);
  }
  if (j.contains("retry")) {
    const auto& r = j["retry"];
    allow_only(r, {"max_attempts", "initial_backoff_ms"}, "retry");
    read(r, "max_attempts", c.retry_attempts, "retry");
    read(r, "initial_backoff_ms", c.retry_backoff_ms, "retry");
  }
  if (j.contains("agents")) {
    if (!j["agents"].is_array()) throw ConfigError("agents must be an array");
    int i = 0;
    for (const auto& aj : j["agents"]) {
      const std::string w = "agents[" + std::to_string(i++) + "]";
      allow_only(aj, {"name", "kind", "faction", "level", "flaw_rate", "backend"}, w);
      AgentSpec a;
      read(aj, "kind", a.kind, w);
      read(aj, "level", a.level, w);
      read(aj, "flaw_rate", a.flaw_rate, w);
      if (aj.contains("faction")) a.faction = faction_from(aj["faction"], w + ".faction");
      if (aj.contains("backend")) {
        const auto& b = aj["backend"];
        const std::string bw = w + ".backend";
        allow_only(b, {"type", "flaw_rate", "path", "endpoint", "model", "timeout_seconds"}, bw);
        read(b, "type", a.backend.type, bw);
        read(b, "flaw_rate", a.backend.flaw_rate, bw);
        read(b, "path", a.backend.path, bw);
        read(b, "endpoint", a.backend.endpoint, bw);
        read(b, "model", a.backend.model, bw);
        read(b, "timeout_seconds", a.backend.timeout_seconds, bw);
      }
      read(aj, "name", a.name, w);
      if (a.name.empty()) a.name = default_name(a);
      c.agents.push_back(std::move(a));
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void RunConfig::validate() const {
  if (mode == Mode::kMatch && agents.size() != 2) {
    throw ConfigError("match mode needs exactly 2 agents, got " + std::to_string(agents.size()));
  }
  if (mode == Mode::kTournament && agents.size() < 2) {
    throw ConfigError("tournament mode needs at least 2 agents, got " + std::to_string(agents.size()));
  }
  if ((mode == Mode::kMetrics || mode == Mode::kDataset || mode == Mode::kReplayVerify) && inputs.empty()) {
    throw ConfigError(std::string(mode_name(mode)) + " mode needs input paths");
  }
  if (repetitions < 1) throw ConfigError("repetitions must be positive");
  if (jobs < 1) throw ConfigError("jobs must be positive");
  if (retry_attempts < 1) throw ConfigError("retry.max_attempts must be positive");
  if (retry_backoff_ms < 0) throw ConfigError("retry.initial_backoff_ms must not be negative");
  std::set<std::string> names;
  for (const auto& a : agents) {
    if (!kKinds.count(a.kind)) throw ConfigError("unknown agent kind " + a.kind);
    if (!names.insert(a.name).second) throw ConfigError("duplicate agent name " + a.name);
    if (a.kind == "builtin" && (a.level < 1 || a.level > 7)) {
      throw ConfigError("builtin level must be 1..7, got " + std::to_string(a.level));
    }
    if (a.flaw_rate < 0 || a.flaw_rate > 1 || a.backend.flaw_rate < 0 || a.backend.flaw_rate > 1) {
      throw ConfigError("flaw_rate must be within [0, 1]");
    }
    if (a.kind == "starevolve" || a.kind == "naive") {
      const auto& t = a.backend.type;
      if (t != "scripted" && t != "canned" && t != "http") throw ConfigError("unknown backend type " + t);
      if (t == "canned" && a.backend.path.empty()) throw ConfigError(a.name + ": canned backend needs a path");
      if (t == "http" && (a.backend.endpoint.empty() || a.backend.model.empty())) {
        throw ConfigError(a.name + ": http backend needs endpoint and model");
      }
    }
  }
  match.validate();
}

sim::ActionRequest action_from_json(const json& j) {
  sim::ActionRequest a;
  a.action = j.at("action").get<std::string>();
  a.units = j.at("units").get<std::vector<sim::UnitId>>();
  if (j.contains("target_unit")) a.target_unit = j["target_unit"].get<sim::UnitId>();
  if (j.contains("target_position")) {
    const auto& p = j["target_position"];
    a.target_position = sim::Cell{p.at(0).get<int>(), p.at(1).get<int>()};
  }
  return a;
}

RecordingBackend::RecordingBackend(agent::Backend& inner, const std::filesystem::path& file)
    : inner_(inner), out_(file, std::ios::binary | std::ios::app) {
  if (!out_) throw BackendError("cannot write " + file.string());
}

agent::ChatResult RecordingBackend::complete(const std::string& prompt, const agent::ChatParams& params) {
  auto r = inner_.complete(prompt, params);
  std::lock_guard lock(mu_);
  out_ << json{{"prompt_hash", agent::prompt_hash(prompt)},
               {"text", r.text},
               {"tokens_in", r.tokens_in},
               {"tokens_out", r.tokens_out}}
              .dump()
       << "\n";
  out_.flush();
  return r;
}

AgentInstance make_agent(const AgentSpec& spec, const RunConfig& cfg, agent::Backend* override_backend) {
  AgentInstance inst;
  if (spec.kind == "builtin") {
    inst.agent = std::make_unique<agent::BuiltinAgent>(spec.level);
    return inst;
  }
  if (spec.kind == "scripted") {
    inst.agent = std::make_unique<agent::ScriptedAgent>(spec.flaw_rate);
    return inst;
  }
  agent::Backend* backend = override_backend;
  if (!backend) {
    const auto& b = spec.backend;
    if (b.type == "scripted") {
      inst.backend = std::make_unique<agent::MockBackend>(agent::ScriptedModel(b.flaw_rate));
    } else if (b.type == "canned") {
      auto mock = std::make_unique<agent::MockBackend>();
      try {
        mock->load_jsonl(b.path);
      } catch (const std::exception& e) {
        throw BackendError(spec.name + ": " + e.what());
      }
      inst.backend = std::move(mock);
    } else if (b.type == "http") {
      try {
        auto http = agent::HttpBackend::from_env(b.endpoint, b.model);
        agent::HttpConfig hc = http.config();
        hc.timeout = std::chrono::seconds(b.timeout_seconds);
        inst.backend = std::make_unique<agent::HttpBackend>(hc);
      } catch (const std::exception& e) {
        throw BackendError(spec.name + ": " + e.what());
      }
    } else {
      throw ConfigError("unknown backend type " + b.type);
    }
    backend = inst.backend.get();
  }
  agent::PipelineContext ctx;
  ctx.backend = backend;
  ctx.params = cfg.generation;
  ctx.retry.max_attempts = cfg.retry_attempts;
  ctx.retry.initial_backoff = std::chrono::milliseconds(cfg.retry_backoff_ms);
  const auto mode = spec.kind == "naive" ? agent::AgentMode::kNaive : agent::AgentMode::kFull;
  inst.agent = std::make_unique<agent::LlmAgent>(spec.name, mode, ctx);
  return inst;
}

namespace {

int trace_tokens(const agent::DecisionTrace& t) {
  int n = 0;
  for (const auto& r : t.planner_chain) n += r.planner_usage.tokens_out + r.verifier_usage.tokens_out;
  for (const auto& r : t.executor_chain) n += r.usage.tokens_out;
  return n;
}

json batch_json(const sim::ActionBatch& b) {
  json a = json::array();
  for (const auto& x : b) a.push_back(protocol::to_json(x));
  return a;
}

json event_json(const sim::Event& e) {
  json j = {{"type", sim::event_type_name(e.type)}, {"player", e.player}, {"unit", e.unit}};
  if (e.minerals) j["minerals"] = e.minerals;
  if (e.vespene) j["vespene"] = e.vespene;
  if (!e.detail.empty()) j["detail"] = e.detail;
  return j;
}

}  // namespace

metrics::MatchRecord run_match(const MatchSetup& setup, const RunConfig& cfg, std::ostream& trajectory,
                               std::array<agent::Backend*, 2> backends) {
  std::array<AgentInstance, 2> seats;
  for (int i = 0; i < 2; ++i) seats[i] = make_agent(setup.seats[i], cfg, backends[i]);
  auto state = sim::create_match(setup.config);

  metrics::MatchRecord record;
  record.match_id = setup.match_id;
  record.seed = setup.config.seed;
  record.ticks_per_game_second = setup.config.ticks_per_game_second;
  json agents = json::array();
  for (int i = 0; i < 2; ++i) {
    record.players[i].agent = setup.seats[i].name;
    record.players[i].faction = std::string(sim::faction_race(setup.config.factions[i]));
    auto a = to_json(setup.seats[i]);
    a["faction"] = sim::faction_id(setup.config.factions[i]);
    agents.push_back(a);
  }
  trajectory << json{{"type", "header"},
                     {"kernel_version", sim::kKernelVersion},
                     {"match_id", setup.match_id},
                     {"config", to_json(setup.config)},
                     {"agents", agents}}
                    .dump()
             << "\n";

  int forfeit = 0;  // seat that crashed
  std::string crash;
  while (sim::outcome(state).kind == sim::OutcomeKind::kOngoing) {
    std::array<agent::AgentStep, 2> steps;
    std::array<dataset::MetricVector, 2> values;
    for (int i = 0; i < 2 && !forfeit; ++i) {
      try {
        steps[i] = seats[i].agent->act(state, i + 1);
      } catch (const std::exception& e) {
        forfeit = i + 1;
        crash = e.what();
      }
      values[i] = dataset::metric_values(state, i + 1);
    }
    if (forfeit) break;

    const int tick = state.tick;
    const auto result = sim::step(state, {steps[0].actions, steps[1].actions});

    for (int i = 0; i < 2 && !forfeit; ++i) {
      auto& rec = record.players[i];
      const auto& executed = result.executed[i];
      try {
        seats[i].agent->on_executed(steps[i], executed);
      } catch (const std::exception& e) {
        forfeit = i + 1;
        crash = e.what();
        break;
      }
      if (!steps[i].trace) continue;
      const auto& trace = *steps[i].trace;
      const auto done = std::count_if(executed.begin(), executed.end(),
                                      [&](std::size_t k) { return k < steps[i].decision_actions; });
      const bool valid = trace.valid && !trace.failure &&
                         static_cast<std::size_t>(done) == steps[i].decision_actions;
      rec.decision_valid.push_back(valid);
      rec.decision_tokens.push_back(trace_tokens(trace));
      rec.degraded = rec.degraded || trace.failure.has_value();
      const auto& v = values[i];
      trajectory << json{{"type", "decision"},
                         {"player", i + 1},
                         {"tick", tick},
                         {"valid", valid},
                         {"metrics",
                          {{"minerals", v.minerals}, {"vespene", v.vespene}, {"army", v.army}, {"workers", v.workers}}},
                         {"trace", agent::to_json(trace)}}
                        .dump()
                 << "\n";
    }

    json events = json::array();
    std::array<int, 2> minerals{}, vespene{};
    for (const auto& e : result.events) {
      if (e.type == sim::EventType::kCost && (e.player == 1 || e.player == 2)) {
        minerals[e.player - 1] += e.minerals;
        vespene[e.player - 1] += e.vespene;
      }
      if (e.type != sim::EventType::kIncome) events.push_back(event_json(e));
    }
    for (int i = 0; i < 2; ++i) {
      auto& rec = record.players[i];
      rec.minerals_spent.push_back(minerals[i]);
      rec.vespene_spent.push_back(vespene[i]);
      rec.supply_capped.push_back(sim::supply_capped(state.player(i + 1)));
    }
    trajectory << json{{"type", "tick"},
                       {"tick", tick},
                       {"actions", {batch_json(steps[0].actions), batch_json(steps[1].actions)}},
                       {"events", events},
                       {"digest", sim::state_digest(state)}}
                      .dump()
               << "\n";
    if (forfeit) break;
  }

  std::string reason;
  if (forfeit) {
    record.winner = sim::opponent(forfeit);
    record.players[forfeit - 1].crashed = true;
    reason = "forfeit: " + crash;
  } else {
    const auto o = sim::outcome(state);
    record.winner = o.kind == sim::OutcomeKind::kWin ? o.winner : 0;
    reason = o.kind == sim::OutcomeKind::kWin ? "elimination"
             : state.tick >= state.config.max_ticks ? "max_ticks"
                                                    : "mutual elimination";
  }
  record.ticks = state.tick;
  trajectory << json{{"type", "result"}, {"reason", reason}, {"record", metrics::to_json(record)}}.dump()
             << "\n";
  trajectory.flush();
  return record;
}

std::vector<MatchSetup> tournament_schedule(const RunConfig& cfg) {
  std::vector<MatchSetup> out;
  const sim::Faction factions[] = {sim::Faction::F1, sim::Faction::F2, sim::Faction::F3};
  for (std::size_t a = 0; a < cfg.agents.size(); ++a) {
    for (std::size_t b = a + 1; b < cfg.agents.size(); ++b) {
      for (auto f : factions) {
        for (int r = 0; r < cfg.repetitions; ++r) {
          MatchSetup s;
          const std::size_t index = out.size();
          char id[32];
          std::snprintf(id, sizeof id, "g%04zu", index);
          s.match_id = id;
          s.seats = r % 2 == 0 ? std::array{cfg.agents[a], cfg.agents[b]}
                               : std::array{cfg.agents[b], cfg.agents[a]};
          s.config = cfg.match;
          s.config.factions = {f, f};
          s.config.seed = derive_seed(cfg.seed, index);
          for (int i = 0; i < 2; ++i) {
            s.config.builtin_difficulty[i] =
                s.seats[i].kind == "builtin" ? std::optional<int>(s.seats[i].level) : std::nullopt;
          }
          out.push_back(std::move(s));
        }
      }
    }
  }
  return out;
}

TournamentResult run_tournament(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto schedule = tournament_schedule(cfg);
  const auto dir = cfg.out / "matches";
  std::filesystem::create_directories(dir);

  TournamentResult result;
  result.records.resize(schedule.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= schedule.size()) return;
      try {
        const auto& s = schedule[i];
        std::ofstream out(dir / (s.match_id + ".jsonl"), std::ios::binary | std::ios::trunc);
        auto rec = run_match(s, cfg, out);
        std::lock_guard lock(mu);
        result.records[i] = std::move(rec);
        const auto& r = result.records[i];
        log << s.match_id << " " << s.seats[0].name << " vs " << s.seats[1].name << " ("
            << sim::faction_id(s.config.factions[0]) << "): "
            << (r.winner ? r.players[r.winner - 1].agent + " wins" : std::string("tie")) << " at tick "
            << r.ticks;
        for (const auto& p : r.players) {
          if (p.crashed) log << " [" << p.agent << " crashed, forfeited]";
        }
        log << "\n";
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = schedule.size();
      }
    }
  };
  const int n = std::min<int>(cfg.jobs, static_cast<int>(schedule.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  result.elo = metrics::run_rating_pass(result.records, cfg.seed);
  std::ofstream(cfg.out / "leaderboard.csv", std::ios::binary) << metrics::leaderboard_csv(result.elo);
  std::ofstream(cfg.out / "leaderboard.json", std::ios::binary)
      << metrics::leaderboard_json(result.elo).dump(2) << "\n";
  std::vector<metrics::MetricsSummary> rows;
  for (const auto& a : cfg.agents) rows.push_back(metrics::compute_metrics(result.records, a.name));
  std::ofstream(cfg.out / "metrics.csv", std::ios::binary) << metrics::metrics_csv(rows);
  return result;
}

ReplayReport replay_verify(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SimulationError("cannot open " + file.string());
  auto fail = [&](int line, const std::string& what) {
    return SimulationError(file.string() + ":" + std::to_string(line) + ": " + what);
  };

  std::string text;
  int line = 0;
  std::optional<sim::GameState> state;
  ReplayReport report;
  bool finished = false;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    if (finished) throw fail(line, "content after the result line");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw fail(line, std::string("malformed JSON: ") + e.what());
    }
    try {
      const auto type = j.at("type").get<std::string>();
      if (!state) {
        if (type != "header") throw fail(line, "expected a header line");
        const auto version = j.at("kernel_version").get<std::string>();
        if (version != sim::kKernelVersion) {
          throw fail(line, "kernel version " + version + " differs from " + std::string(sim::kKernelVersion));
        }
        try {
          state = sim::create_match(match_config_from_json(j.at("config")));
        } catch (const ConfigError& e) {
          throw fail(line, e.what());
        }
        continue;
      }
      if (type == "decision") continue;
      if (type == "tick") {
        const int tick = j.at("tick").get<int>();
        if (tick != state->tick) {
          report.ok = false;
          report.divergent_tick = state->tick;
          report.message = "expected tick " + std::to_string(state->tick) + ", file has " + std::to_string(tick);
          return report;
        }
        sim::JointActions joint;
        const auto& actions = j.at("actions");
        for (int i = 0; i < 2; ++i) {
          for (const auto& a : actions.at(i)) joint[i].push_back(action_from_json(a));
        }
        sim::step(*state, joint);
        ++report.ticks;
        if (sim::state_digest(*state) != j.at("digest").get<std::string>()) {
          report.ok = false;
          report.divergent_tick = tick;
          report.message = "state digest differs after tick " + std::to_string(tick);
          return report;
        }
      } else if (type == "result") {
        const auto rec = metrics::record_from_json(j.at("record"));
        const bool forfeit = rec.players[0].crashed || rec.players[1].crashed;
        const auto o = sim::outcome(*state);
        const int winner = o.kind == sim::OutcomeKind::kWin ? o.winner : 0;
        if (rec.ticks != state->tick || (!forfeit && rec.winner != winner)) {
          report.ok = false;
          report.message = "recorded result differs from the re-simulated outcome";
          return report;
        }
        finished = true;
      } else {
        throw fail(line, "unknown line type " + type);
      }
    } catch (const json::exception& e) {
      throw fail(line, e.what());
    } catch (const std::invalid_argument& e) {
      throw fail(line, e.what());
    }
  }
  if (!state) throw fail(line + 1, "missing header line");
  if (!finished) throw fail(line + 1, "missing result line (truncated file)");
  report.message = "ok";
  return report;
}

std::vector<metrics::MatchRecord> load_records(const std::vector<std::filesystem::path>& inputs) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : inputs) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& e : std::filesystem::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".jsonl") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<metrics::MatchRecord> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw SimulationError("cannot open " + f.string());
    std::string text, last;
    int line = 0, last_line = 0;
    while (std::getline(in, text)) {
      ++line;
      if (!text.empty()) {
        last = text;
        last_line = line;
      }
    }
    try {
      const auto j = json::parse(last);
      if (j.value("type", "") != "result") throw std::invalid_argument("last line is not a result line");
      out.push_back(metrics::record_from_json(j.at("record")));
    } catch (const std::exception& e) {
      throw SimulationError(f.string() + ":" + std::to_string(last_line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace rtsarena::arena
