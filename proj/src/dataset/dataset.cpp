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

#include "rtsarena/dataset/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rtsarena/agent/prompts.hpp"
#include "rtsarena/sim/catalog.hpp"

namespace rtsarena::dataset {

using nlohmann::json;

MetricVector metric_values(const sim::GameState& state, sim::PlayerId player) {
  MetricVector m;
  for (const auto& [id, u] : state.units) {
    if (u.owner != player) continue;
    const auto& k = sim::kind_of(u);
    m.minerals += k.minerals;
    m.vespene += k.vespene;
    if (k.cls == sim::UnitClass::kArmy) m.army += 1;
    if (k.cls == sim::UnitClass::kWorker) m.workers += 1;
  }
  return m;
}

std::vector<MetricRow> normalize_metrics(const std::vector<MetricVector>& stream) {
  std::vector<MetricRow> out(stream.size(), MetricRow{});
  if (stream.empty()) return out;
  const double n = static_cast<double>(stream.size());
  for (std::size_t m = 0; m < 4; ++m) {
    double mean = 0;
    for (const auto& v : stream) mean += v.values()[m];
    mean /= n;
    double var = 0;
    for (const auto& v : stream) var += (v.values()[m] - mean) * (v.values()[m] - mean);
    const double sd = std::sqrt(var / n);
    if (sd == 0) continue;
    for (std::size_t i = 0; i < stream.size(); ++i) out[i][m] = (stream[i].values()[m] - mean) / sd;
  }
  return out;
}

std::optional<double> score_action(const std::vector<MetricRow>& normalized, std::size_t t,
                                   int horizon, double gamma) {
  if (t + static_cast<std::size_t>(horizon) >= normalized.size()) return std::nullopt;
  double score = 0;
  double discount = 1;
  for (int k = 1; k <= horizon; ++k) {
    discount *= gamma;
    double gain = 0;
    for (std::size_t m = 0; m < 4; ++m) gain += normalized[t + k][m] - normalized[t][m];
    score += discount * gain;
  }
  return score;
}

std::vector<double> standardize_scores(const std::vector<double>& scores,
                                       const std::vector<double>& seconds, double window) {
  if (scores.size() != seconds.size()) throw std::invalid_argument("scores and times differ in length");
  std::map<long long, std::vector<std::size_t>> bins;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    bins[static_cast<long long>(std::floor(seconds[i] / window))].push_back(i);
  }
  std::vector<double> z(scores.size(), 0.0);
  for (const auto& [bin, idx] : bins) {
    if (idx.size() < 2) continue;
    double mean = 0;
    for (auto i : idx) mean += scores[i];
    mean /= static_cast<double>(idx.size());
    double var = 0;
    for (auto i : idx) var += (scores[i] - mean) * (scores[i] - mean);
    const double sd = std::sqrt(var / static_cast<double>(idx.size()));
    if (sd == 0) continue;
    for (auto i : idx) z[i] = (scores[i] - mean) / sd;
  }
  return z;
}

TraceView view_of(const agent::DecisionTrace& trace) {
  TraceView v;
  v.tick = trace.tick;
  v.observation = trace.observation;
  for (const auto& r : trace.planner_chain) {
    v.planner.push_back(PlanStep{r.prompt, r.raw, r.commands, r.extracted, r.accepted(),
                                 r.report.errors, r.report.error_number, r.feedback});
  }
  for (const auto& r : trace.executor_chain) {
    v.executor.push_back(ExecStep{r.prompt, r.raw, r.report.accepted()});
  }
  return v;
}

TraceView view_from_json(const json& j) {
  TraceView v;
  v.tick = j.at("tick").get<int>();
  v.observation = j.value("observation", "");
  for (const auto& r : j.at("planner_chain")) {
    PlanStep p;
    p.prompt = r.at("prompt").get<std::string>();
    p.raw = r.at("raw").get<std::string>();
    p.commands = r.value("commands", std::vector<std::string>{});
    p.extracted = r.value("extracted", false);
    p.accepted = r.at("accepted").get<bool>();
    p.errors = r.value("errors", std::vector<std::string>{});
    p.error_number = r.value("error_number", 0);
    p.feedback = r.value("feedback", "");
    v.planner.push_back(std::move(p));
  }
  for (const auto& r : j.at("executor_chain")) {
    v.executor.push_back(ExecStep{r.at("prompt").get<std::string>(), r.at("raw").get<std::string>(),
                                  r.at("accepted").get<bool>()});
  }
  return v;
}

std::vector<ScoredPoint> score_trajectory(const PlayerTrajectory& trajectory) {
  std::vector<MetricVector> stream;
  for (const auto& p : trajectory.points) stream.push_back(p.metrics);
  const auto normalized = normalize_metrics(stream);
  std::vector<ScoredPoint> out;
  std::vector<double> raw, seconds;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    auto s = score_action(normalized, i);
    if (!s) break;
    out.push_back(ScoredPoint{i, *s, 0});
    raw.push_back(*s);
    seconds.push_back(static_cast<double>(trajectory.points[i].tick) /
                      trajectory.ticks_per_game_second);
  }
  const auto z = standardize_scores(raw, seconds);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].z = z[i];
  return out;
}

std::vector<ScoredPoint> select_samples(const PlayerTrajectory& trajectory, double threshold) {
  std::vector<ScoredPoint> out;
  if (!trajectory.won) return out;
  for (const auto& s : score_trajectory(trajectory)) {
    if (s.z > threshold) out.push_back(s);
  }
  return out;
}

std::string_view sample_kind_name(SampleKind k) {
  switch (k) {
    case SampleKind::kPlanner:
      return "planner";
    case SampleKind::kExecutor:
      return "executor";
    case SampleKind::kVerifier:
      return "verifier";
  }
  return "?";
}

json to_json(const Sample& s) {
  return {{"kind", sample_kind_name(s.kind)}, {"prompt", s.prompt},     {"target", s.target},
          {"match_id", s.match_id},           {"faction", s.faction}, {"t", s.t},
          {"z_score", s.z_score}};
}

namespace {

template <class Step>
bool repeats_earlier(const std::vector<Step>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i].raw == chain.back().raw) return true;
  }
  return false;
}

Sample make(SampleKind kind, std::string prompt, std::string target, const SampleMeta& meta) {
  return Sample{kind, std::move(prompt), std::move(target), meta.match_id, meta.faction, meta.tick,
                meta.z_score};
}

std::string commands_text(const PlanStep& p) {
  return p.extracted ? agent::format_commands(p.commands) : p.raw;
}

std::string report_text(const PlanStep& p) {
  return json{{"errors", p.errors}, {"error_number", p.error_number}}.dump(4);
}

}  // namespace

std::vector<Sample> build_decision_samples(const TraceView& trace, const SampleMeta& meta) {
  std::vector<Sample> out;
  if (trace.planner.empty() || !trace.planner.back().accepted) return out;
  if (!repeats_earlier(trace.planner)) {
    out.push_back(make(SampleKind::kPlanner, trace.planner.front().prompt, trace.planner.back().raw, meta));
  }
  if (!trace.executor.empty() && trace.executor.back().accepted &&
      !trace.executor.front().prompt.empty() && !repeats_earlier(trace.executor)) {
    out.push_back(
        make(SampleKind::kExecutor, trace.executor.front().prompt, trace.executor.back().raw, meta));
  }
  return out;
}

std::optional<Sample> build_verifier_sample(const TraceView& trace, const SampleMeta& meta) {
  const auto& chain = trace.planner;
  if (chain.size() < 2 || !chain.back().accepted || chain[chain.size() - 2].accepted) {
    return std::nullopt;
  }
  const auto& bad = chain[chain.size() - 2];
  const auto& good = chain.back();
  const std::string prompt = "**Current Game State**\n" + trace.observation +
                             "\n\n**Rejected commands**\n" + commands_text(bad) +
                             "\n\n**Verifier feedback**\n" + report_text(bad);
  const std::string target = "**Accepted commands**\n" + commands_text(good) +
                             "\n\n**Verifier feedback**\n" + report_text(good);
  return make(SampleKind::kVerifier, prompt, target, meta);
}

json to_json(const Manifest& m) {
  json counts = json::object();
  for (const auto& [faction, kinds] : m.counts) counts[faction] = kinds;
  return {{"trajectories", m.trajectories},
          {"winning", m.winning},
          {"victories", m.victories},
          {"samples", m.samples},
          {"counts", counts},
          {"warnings", m.warnings}};
}

std::string manifest_table(const Manifest& m) {
  const char* kinds[] = {"planner", "verifier", "executor"};
  std::ostringstream os;
  os << "Race,Victory Traces,Planner Samples,Verifier Samples,Executor Samples,Total\n";
  std::array<int, 5> total{};
  for (const auto& [race, kindmap] : m.counts) {
    const auto v = m.victories.count(race) ? m.victories.at(race) : 0;
    std::array<int, 5> row{v, 0, 0, 0, 0};
    for (int k = 0; k < 3; ++k) {
      row[1 + k] = kindmap.count(kinds[k]) ? kindmap.at(kinds[k]) : 0;
      row[4] += row[1 + k];
    }
    os << race;
    for (std::size_t i = 0; i < 5; ++i) {
      os << "," << row[i];
      total[i] += row[i];
    }
    os << "\n";
  }
  os << "Total";
  for (int t : total) os << "," << t;
  os << "\n";
  return os.str();
}

std::vector<PlayerTrajectory> read_trajectories(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::string line;
  int number = 0;
  json header, result;
  std::map<int, PlayerTrajectory> players;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        header = j;
      } else if (type == "result") {
        result = j.at("record");
      } else if (type == "decision") {
        const int p = j.at("player").get<int>();
        DecisionPoint d;
        d.tick = j.at("tick").get<int>();
        const auto& m = j.at("metrics");
        d.metrics = MetricVector{m.at("minerals").get<double>(), m.at("vespene").get<double>(),
                                 m.at("army").get<double>(), m.at("workers").get<double>()};
        if (j.contains("trace") && !j["trace"].is_null()) d.trace = view_from_json(j["trace"]);
        players[p].points.push_back(std::move(d));
      }
    } catch (const json::exception& e) {
      throw std::runtime_error(file.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  if (header.is_null()) throw std::runtime_error(file.string() + ": missing header line");
  if (result.is_null()) throw std::runtime_error(file.string() + ": missing result line");
  std::vector<PlayerTrajectory> out;
  for (auto& [p, t] : players) {
    if (p < 1 || p > 2) throw std::runtime_error(file.string() + ": bad player number");
    t.match_id = header.value("match_id", file.stem().string());
    const auto id = header.at("agents").at(p - 1).value("faction", "");
    const auto f = sim::parse_faction(id);
    t.faction = f ? std::string(sim::faction_race(*f)) : id;
    t.won = result.at("winner").get<int>() == p;
    t.ticks_per_game_second = header.at("config").value("ticks_per_game_second", 16);
    out.push_back(std::move(t));
  }
  return out;
}

Manifest export_dataset(const std::filesystem::path& matches_dir, const std::filesystem::path& out_dir) {
  Manifest manifest;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(matches_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Sample> samples;
  for (const auto& f : files) {
    std::vector<PlayerTrajectory> trajectories;
    try {
      trajectories = read_trajectories(f);
    } catch (const std::exception& e) {
      manifest.warnings.push_back(std::string("skipped ") + e.what());
      continue;
    }
    for (const auto& t : trajectories) {
      ++manifest.trajectories;
      if (!t.won) continue;
      ++manifest.winning;
      ++manifest.victories[t.faction];
      for (const char* k : {"planner", "verifier", "executor"}) manifest.counts[t.faction][k] += 0;
      for (const auto& s : select_samples(t)) {
        const auto& point = t.points[s.index];
        if (!point.trace) continue;
        const SampleMeta meta{t.match_id, t.faction, point.tick, s.z};
        for (auto& d : build_decision_samples(*point.trace, meta)) samples.push_back(std::move(d));
        if (auto v = build_verifier_sample(*point.trace, meta)) samples.push_back(std::move(*v));
      }
    }
  }
  std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    return std::tie(a.match_id, a.t, a.kind) < std::tie(b.match_id, b.t, b.kind);
  });

  std::filesystem::create_directories(out_dir);
  std::ofstream data(out_dir / "dataset.jsonl", std::ios::binary);
  for (const auto& s : samples) {
    data << to_json(s).dump() << "\n";
    ++manifest.counts[s.faction][std::string(sample_kind_name(s.kind))];
  }
  manifest.samples = static_cast<int>(samples.size());
  if (manifest.winning == 0) manifest.warnings.push_back("no winning trajectories");
  std::ofstream(out_dir / "manifest.json", std::ios::binary) << to_json(manifest).dump(2) << "\n";
  return manifest;
}

}  // namespace rtsarena::dataset
