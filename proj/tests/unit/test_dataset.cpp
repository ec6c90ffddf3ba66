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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "rtsarena/dataset/dataset.hpp"
#include "rtsarena/sim/catalog.hpp"
#include "scoring.hpp"
#include "states.hpp"

namespace rtsarena::dataset {
namespace {

using nlohmann::json;
using fixtures::oracle_scores;
using fixtures::planted;

TEST(Metrics, CountsOwnUnits) {
  auto s = fixtures::protoss_base(100);
  const auto before = metric_values(s, 1);
  const auto hq = sim::start_location(s.config, 1);
  fixtures::place(s, "Probe", 1, {hq.x + 2, hq.y});
  auto m = metric_values(s, 1);
  EXPECT_DOUBLE_EQ(m.minerals - before.minerals, 50);
  EXPECT_DOUBLE_EQ(m.workers - before.workers, 1);
  fixtures::place(s, "Stalker", 1, {hq.x + 3, hq.y});
  fixtures::place(s, "Stalker", 2, {hq.x + 4, hq.y});
  const auto after = metric_values(s, 1);
  EXPECT_DOUBLE_EQ(after.minerals - m.minerals, 125);
  EXPECT_DOUBLE_EQ(after.vespene - m.vespene, 50);
  EXPECT_DOUBLE_EQ(after.army - m.army, 1);
}

TEST(Normalize, TwoPointsAndConstant) {
  const auto n = normalize_metrics({{0, 5, 1, 0}, {2, 5, 3, 0}});
  EXPECT_DOUBLE_EQ(n[0][0], -1);
  EXPECT_DOUBLE_EQ(n[1][0], 1);
  EXPECT_DOUBLE_EQ(n[0][1], 0);
  EXPECT_DOUBLE_EQ(n[1][2], 1);
  EXPECT_DOUBLE_EQ(n[1][3], 0);
}

TEST(Normalize, RandomStreamHasZeroMeanUnitStd) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0, 1000);
  std::vector<MetricVector> stream;
  for (int i = 0; i < 200; ++i) stream.push_back({d(rng), d(rng), d(rng), d(rng)});
  const auto n = normalize_metrics(stream);
  for (std::size_t m = 0; m < 4; ++m) {
    double mean = 0, sq = 0;
    for (const auto& r : n) mean += r[m];
    mean /= 200;
    for (const auto& r : n) sq += (r[m] - mean) * (r[m] - mean);
    EXPECT_NEAR(mean, 0, 1e-9);
    EXPECT_NEAR(std::sqrt(sq / 200), 1, 1e-9);
  }
}

TEST(Score, GeometricSum) {
  std::vector<MetricRow> rows(21, MetricRow{1, 0, 0, 0});
  rows[0] = MetricRow{0, 0, 0, 0};
  const auto s = score_action(rows, 0);
  ASSERT_TRUE(s.has_value());
  double g = 0;
  for (int k = 1; k <= 20; ++k) g += std::pow(0.95, k);
  EXPECT_NEAR(*s, g, 1e-12);
  EXPECT_NEAR(*s, 0.95 * (1 - std::pow(0.95, 20)) / 0.05, 1e-12);
  EXPECT_NEAR(*s, 12.18877, 1e-5);
  EXPECT_GT(std::pow(0.95, 20), 0.355);
  EXPECT_LT(std::pow(0.95, 20), 0.360);
}

TEST(Score, ConstantIsZeroAndShortHorizonIsAbsent) {
  std::vector<MetricRow> rows(30, MetricRow{2, 1, 0, 3});
  EXPECT_DOUBLE_EQ(*score_action(rows, 3), 0);
  EXPECT_TRUE(score_action(rows, 9).has_value());
  EXPECT_FALSE(score_action(rows, 10).has_value());
}

TEST(Score, MatchesOracleOnRandomStates) {
  std::mt19937_64 rng(17);
  const char* kinds[] = {"Probe", "Zealot", "Stalker", "Pylon", "Gateway", "Sentry"};
  for (int trial = 0; trial < 50; ++trial) {
    auto s = fixtures::protoss_base(100);
    PlayerTrajectory traj;
    traj.won = true;
    std::vector<std::array<double, 4>> raw;
    for (int i = 0; i < 60; ++i) {
      const int adds = static_cast<int>(rng() % 3);
      for (int a = 0; a < adds; ++a) {
        fixtures::place(s, kinds[rng() % 6], 1 + static_cast<int>(rng() % 2),
                        {static_cast<int>(rng() % 60), static_cast<int>(rng() % 60)});
      }
      if (!s.units.empty() && rng() % 4 == 0) s.units.erase(std::prev(s.units.end()));
      // independent count of player 1's value, army and workers
      std::array<double, 4> r{};
      for (const auto& [id, u] : s.units) {
        if (u.owner != 1) continue;
        const auto& k = sim::Catalog::get().kind(u.kind);
        r[0] += k.minerals;
        r[1] += k.vespene;
        r[2] += k.cls == sim::UnitClass::kArmy;
        r[3] += k.cls == sim::UnitClass::kWorker;
      }
      raw.push_back(r);
      traj.points.push_back(DecisionPoint{i * 24, metric_values(s, 1), std::nullopt});
    }
    const auto expect = oracle_scores(raw);
    const auto got = score_trajectory(traj);
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i].raw, expect[i], 1e-9);
  }
}

TEST(Standardize, PerInterval) {
  auto z = standardize_scores({1, 3, 10}, {0, 10, 31});
  EXPECT_DOUBLE_EQ(z[0], -1);
  EXPECT_DOUBLE_EQ(z[1], 1);
  EXPECT_DOUBLE_EQ(z[2], 0);
  z = standardize_scores({5, 5, 2, 4, 6}, {0, 29.9, 30, 45, 59});
  EXPECT_DOUBLE_EQ(z[0], 0);
  EXPECT_DOUBLE_EQ(z[2], -std::sqrt(1.5));
  EXPECT_DOUBLE_EQ(z[3], 0);
  EXPECT_THROW(standardize_scores({1}, {}), std::invalid_argument);
}

TEST(Select, RecoversPlantedPoints) {
  std::vector<std::size_t> plants;
  const auto t = planted(6, &plants);
  std::vector<std::size_t> got;
  for (const auto& s : select_samples(t)) got.push_back(s.index);
  EXPECT_EQ(got, plants);
}

TEST(Select, ThresholdIsStrictAndLossesYieldNothing) {
  auto t = planted(3, nullptr);
  const auto all = score_trajectory(t);
  double zmax = 0;
  for (const auto& s : all) zmax = std::max(zmax, s.z);
  EXPECT_TRUE(select_samples(t, zmax).empty());
  EXPECT_FALSE(select_samples(t, std::nextafter(zmax, 0.0)).empty());
  t.won = false;
  EXPECT_TRUE(select_samples(t).empty());
}

PlanStep plan(std::string raw, bool accepted) {
  PlanStep p;
  p.prompt = "planner prompt";
  p.raw = raw;
  p.commands = {raw};
  p.extracted = true;
  p.accepted = accepted;
  if (!accepted) {
    p.errors = {"bad"};
    p.error_number = 1;
  }
  return p;
}

TraceView trace_of(std::vector<PlanStep> planner, std::vector<ExecStep> executor) {
  TraceView t;
  t.tick = 96;
  t.observation = "obs";
  t.planner = std::move(planner);
  t.executor = std::move(executor);
  return t;
}

const SampleMeta kMeta{"m1", "F1", 96, 0.5};

TEST(Samples, VerifierNeedsRejectionThenAcceptance) {
  EXPECT_TRUE(build_verifier_sample(trace_of({plan("a", false), plan("b", true)}, {}), kMeta));
  EXPECT_FALSE(build_verifier_sample(trace_of({plan("b", true)}, {}), kMeta));
  EXPECT_FALSE(build_verifier_sample(trace_of({plan("a", false), plan("b", false)}, {}), kMeta));
  const auto v =
      build_verifier_sample(trace_of({plan("x", false), plan("y", false), plan("z", true)}, {}), kMeta);
  ASSERT_TRUE(v);
  EXPECT_NE(v->prompt.find("y"), std::string::npos);
  EXPECT_EQ(v->prompt.find("x"), std::string::npos);
  EXPECT_NE(v->target.find("z"), std::string::npos);
  EXPECT_EQ(v->kind, SampleKind::kVerifier);
  EXPECT_EQ(v->t, 96);
}

TEST(Samples, DecisionTargetsComeFromAcceptedFinalElements) {
  const auto t = trace_of({plan("a", false), plan("b", true)},
                          {ExecStep{"exec prompt", "[1]", false}, ExecStep{"exec prompt", "[2]", true}});
  const auto s = build_decision_samples(t, kMeta);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].kind, SampleKind::kPlanner);
  EXPECT_EQ(s[0].target, "b");
  EXPECT_EQ(s[1].kind, SampleKind::kExecutor);
  EXPECT_EQ(s[1].target, "[2]");

  EXPECT_TRUE(build_decision_samples(trace_of({plan("a", false)}, {}), kMeta).empty());
  const auto rejected_exec =
      build_decision_samples(trace_of({plan("b", true)}, {ExecStep{"p", "[1]", false}}), kMeta);
  ASSERT_EQ(rejected_exec.size(), 1u);
  EXPECT_EQ(rejected_exec[0].kind, SampleKind::kPlanner);
}

TEST(Samples, NoTargetRepeatsARejectedOutput) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PlanStep> planner;
    std::vector<ExecStep> exec;
    const int np = 1 + static_cast<int>(rng() % 3), ne = static_cast<int>(rng() % 4);
    for (int i = 0; i < np; ++i) planner.push_back(plan(std::to_string(rng() % 3), rng() % 2));
    for (int i = 0; i < ne; ++i) exec.push_back(ExecStep{"p", std::to_string(rng() % 3), rng() % 2 == 0});
    const auto t = trace_of(planner, exec);
    for (const auto& s : build_decision_samples(t, kMeta)) {
      if (s.kind == SampleKind::kPlanner) {
        for (const auto& p : planner) {
          if (!p.accepted) EXPECT_NE(p.raw, s.target);
        }
      } else {
        for (const auto& e : exec) {
          if (!e.accepted) EXPECT_NE(e.raw, s.target);
        }
      }
    }
  }
}

json trace_json(int tick) {
  return {{"tick", tick},
          {"observation", "obs"},
          {"rules", json::array()},
          {"planner_chain",
           {{{"prompt", "pp"}, {"raw", "bad"}, {"commands", {"bad"}}, {"extracted", true},
             {"errors", {"e"}}, {"error_number", 1}, {"accepted", false}, {"feedback", "f"}},
            {{"prompt", "pp"}, {"raw", "good"}, {"commands", {"good"}}, {"extracted", true},
             {"errors", json::array()}, {"error_number", 0}, {"accepted", true}, {"feedback", ""}}}},
          {"executor_chain", {{{"prompt", "ep"}, {"raw", "[]"}, {"accepted", true}}}}};
}

void write_match(const std::filesystem::path& file, const std::string& id, int winner,
                 const PlayerTrajectory& t) {
  std::ofstream out(file);
  out << json{{"type", "header"},
              {"match_id", id},
              {"config", {{"ticks_per_game_second", 16}}},
              {"agents", {{{"name", "a"}, {"faction", "F1"}}, {{"name", "b"}, {"faction", "F2"}}}}}
             .dump()
      << "\n";
  for (const auto& p : t.points) {
    for (int player = 1; player <= 2; ++player) {
      const auto& m = p.metrics;
      out << json{{"type", "decision"},
                  {"player", player},
                  {"tick", p.tick},
                  {"metrics",
                   {{"minerals", m.minerals}, {"vespene", m.vespene}, {"army", m.army}, {"workers", m.workers}}},
                  {"trace", trace_json(p.tick)}}
                 .dump()
          << "\n";
    }
  }
  out << json{{"type", "result"}, {"record", {{"winner", winner}}}}.dump() << "\n";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

TEST(Export, ManifestAndDeterminism) {
  const auto dir = std::filesystem::temp_directory_path() / "rtsarena_export_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "in");
  const auto t = planted(4, nullptr);
  write_match(dir / "in" / "m1.jsonl", "m1", 1, t);
  write_match(dir / "in" / "m2.jsonl", "m2", 0, t);
  std::ofstream(dir / "in" / "m3.jsonl") << "{\"type\":\"header\"\n";

  const auto a = export_dataset(dir / "in", dir / "out1");
  const auto b = export_dataset(dir / "in", dir / "out2");
  EXPECT_EQ(slurp(dir / "out1" / "dataset.jsonl"), slurp(dir / "out2" / "dataset.jsonl"));
  EXPECT_EQ(slurp(dir / "out1" / "manifest.json"), slurp(dir / "out2" / "manifest.json"));
  EXPECT_EQ(a.trajectories, 4);
  EXPECT_EQ(a.winning, 1);
  ASSERT_EQ(a.warnings.size(), 1u);
  EXPECT_NE(a.warnings[0].find("m3.jsonl:1"), std::string::npos);
  // four planted points in the winning Terran trajectory, each yielding three samples
  EXPECT_EQ(a.counts.at("Terran").at("planner"), 4);
  EXPECT_EQ(a.counts.at("Terran").at("executor"), 4);
  EXPECT_EQ(a.counts.at("Terran").at("verifier"), 4);
  EXPECT_EQ(a.counts.count("Zerg"), 0u);
  EXPECT_EQ(a.victories.at("Terran"), 1);
  EXPECT_EQ(a.samples, 12);
  EXPECT_EQ(manifest_table(a),
            "Race,Victory Traces,Planner Samples,Verifier Samples,Executor Samples,Total\n"
            "Terran,1,4,4,4,12\nTotal,1,4,4,4,12\n");
  std::filesystem::remove_all(dir);
}

TEST(Export, NoWinnersWarns) {
  const auto dir = std::filesystem::temp_directory_path() / "rtsarena_export_tie";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "in");
  write_match(dir / "in" / "m.jsonl", "m", 0, planted(2, nullptr));
  const auto m = export_dataset(dir / "in", dir / "out");
  EXPECT_EQ(m.samples, 0);
  EXPECT_EQ(m.warnings, std::vector<std::string>{"no winning trajectories"});
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace rtsarena::dataset
