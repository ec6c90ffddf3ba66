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
#include <random>

#include "records.hpp"
#include "rtsarena/metrics/metrics.hpp"

namespace rtsarena::metrics {
namespace {

using fixtures::five;
using fixtures::game;

// 1/(1+10^0.5) == 1/(1+sqrt(10)), evaluated in long double.
const long double kOracle = 1.0L / (1.0L + std::sqrt(10.0L));

TEST(Elo, ExpectedScore) {
  EXPECT_DOUBLE_EQ(expected_score(1000, 1000), 0.5);
  EXPECT_NEAR(expected_score(1000, 1200), static_cast<double>(kOracle), 1e-12);
  EXPECT_NEAR(expected_score(1000, 1200), 0.240253, 1e-6);
  EXPECT_NEAR(expected_score(1200, 1000), 0.759747, 1e-6);
}

TEST(Elo, Complementarity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0, 3000);
  for (int i = 0; i < 1000; ++i) {
    const double a = d(rng), b = d(rng);
    EXPECT_NEAR(expected_score(a, b) + expected_score(b, a), 1.0, 1e-12);
  }
}

TEST(Elo, Updates) {
  EloTable t;
  update_elo(t, "a", "b", GameResult::kAWins);
  EXPECT_DOUBLE_EQ(t.rating("a"), 1016);
  EXPECT_DOUBLE_EQ(t.rating("b"), 984);

  EloTable u;
  u.ratings = {{"a", 1000}, {"b", 1200}};
  update_elo(u, "a", "b", GameResult::kAWins);
  EXPECT_NEAR(u.rating("a"), 1000 + 32 * (1 - static_cast<double>(kOracle)), 1e-9);
  EXPECT_NEAR(u.rating("a"), 1024.31, 0.01);

  EloTable tie;
  update_elo(tie, "a", "b", GameResult::kTie);
  EXPECT_DOUBLE_EQ(tie.rating("a"), 1000);
  EXPECT_THROW(update_elo(tie, "a", "a", GameResult::kTie), std::invalid_argument);
}

TEST(Elo, Conservation) {
  EloTable t;
  std::mt19937_64 rng(9);
  const std::vector<std::string> names{"p", "q", "r", "s", "t", "u"};
  for (int i = 0; i < 10000; ++i) {
    const auto a = rng() % names.size();
    auto b = rng() % names.size();
    if (a == b) b = (b + 1) % names.size();
    update_elo(t, names[a], names[b], static_cast<GameResult>(rng() % 3));
  }
  EXPECT_NEAR(t.sum(), 1000.0 * t.ratings.size(), 1e-9);
}

TEST(Elo, RatingPass) {
  EXPECT_TRUE(run_rating_pass({}, 1).ratings.empty());
  const auto one = run_rating_pass({game("a", "b", 1)}, 1);
  EXPECT_DOUBLE_EQ(one.rating("a"), 1016);
  EXPECT_DOUBLE_EQ(one.rating("b"), 984);
  EXPECT_EQ(one.ranking().front().first, "a");
}

TEST(Elo, RankingStableUnderShuffles) {
  std::vector<MatchRecord> records;
  for (int i = 0; i < 20; ++i) {
    // 15 of 20 for the stronger agent, alternating seats
    const bool strong_wins = i % 4 != 3;
    records.push_back(i % 2 ? game("strong", "weak", strong_wins ? 1 : 2)
                            : game("weak", "strong", strong_wins ? 2 : 1));
  }
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = run_rating_pass(records, seed);
    agree += t.rating("strong") > t.rating("weak");
  }
  EXPECT_GE(agree, 95);
}

// ---- compute_metrics -------------------------------------------------------

TEST(Metrics, HandComputedFiveMatches) {
  const auto s = compute_metrics(five(), "A");
  EXPECT_EQ(s.matches, 5);
  EXPECT_EQ(s.win, (Ratio{2, 5}));
  EXPECT_EQ(s.capped, (Ratio{176, 1440}));
  EXPECT_EQ(s.valid, (Ratio{5, 7}));
  EXPECT_EQ(s.spent, 1225);
  EXPECT_EQ(s.tokens, 1260);
  EXPECT_EQ(s.decisions, 7);

  EXPECT_DOUBLE_EQ(s.wr.value, 40.0);
  ASSERT_TRUE(s.tcw);
  EXPECT_NEAR(s.tcw->value, 20.0, 1e-9);
  EXPECT_NEAR(s.sbr.value, 100.0 * 176 / 1440, 1e-9);
  EXPECT_NEAR(s.rur.value, 1225.0 / 1440, 1e-9);
  ASSERT_TRUE(s.tpd);
  EXPECT_NEAR(s.tpd->value, 180.0, 1e-9);
  ASSERT_TRUE(s.var);
  EXPECT_NEAR(s.var->value, 500.0 / 7, 1e-9);

  // spread over faction groups: Protoss 0%, Terran 50%, Zerg 50%
  EXPECT_NEAR(s.wr.mean, 100.0 / 3, 1e-9);
  EXPECT_NEAR(s.wr.stddev, std::sqrt(5000.0 / 9), 1e-9);
  EXPECT_NEAR(s.tcw->mean, 20.0, 1e-9);
  EXPECT_NEAR(s.tcw->stddev, 10.0, 1e-9);
}

TEST(Metrics, ElevenOfTwenty) {
  std::vector<MatchRecord> rs;
  for (int i = 0; i < 20; ++i) rs.push_back(game("A", "B", i < 11 ? 1 : 2));
  const auto s = compute_metrics(rs, "A");
  EXPECT_EQ(format_cell(s.wr, 2), "55.00 ± 0.00");
  EXPECT_NE(metrics_table({s}).find("55.00"), std::string::npos);
}

TEST(Metrics, SmallCases) {
  auto r = game("A", "B", 2, 300 * 16);
  for (int i = 0; i < 30 * 16; ++i) r.players[0].supply_capped[static_cast<std::size_t>(i)] = true;
  r.players[0].decision_valid = {true, true, true, false};
  r.players[0].decision_tokens = {1, 1, 1, 1};
  const auto s = compute_metrics({r}, "A");
  EXPECT_DOUBLE_EQ(s.sbr.value, 10.0);
  EXPECT_DOUBLE_EQ(s.var->value, 75.0);
  EXPECT_FALSE(s.tcw);
  EXPECT_THROW(compute_metrics({r}, "nobody"), std::invalid_argument);
  const auto b = compute_metrics({r}, "B");
  EXPECT_FALSE(b.var);
  EXPECT_EQ(format_cell(b.var, 2), "-");
}

TEST(Metrics, RecordJsonRoundTrip) {
  for (const auto& r : five()) {
    const auto back = record_from_json(to_json(r));
    EXPECT_EQ(to_json(back), to_json(r));
  }
  EXPECT_THROW(record_from_json(nlohmann::json::object()), std::invalid_argument);
}

TEST(Metrics, Outputs) {
  const auto s = compute_metrics(five(), "A");
  const auto csv = metrics_csv({s});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "agent,matches,wins,WR,TCW,SBR,RUR,TPD,VAR");
  EXPECT_NE(csv.find("A,5,2,40.00,20.0,12.22,0.8507,180.0,71.43"), std::string::npos);
  EXPECT_EQ(to_json(s)["TCW"]["value"], 20.0);
  EloTable t;
  update_elo(t, "x", "y", GameResult::kBWins);
  EXPECT_EQ(leaderboard_csv(t), "rank,agent,rating\n1,y,1016.00\n2,x,984.00\n");
}

}  // namespace
}  // namespace rtsarena::metrics
