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

#include <array>
#include <cmath>
#include <vector>

#include "rtsarena/dataset/dataset.hpp"

namespace rtsarena::fixtures {

using dataset::DecisionPoint;
using dataset::PlayerTrajectory;

// Independent recomputation of the per-step score for a raw metric stream.
inline std::vector<double> oracle_scores(const std::vector<std::array<double, 4>>& raw) {
  const std::size_t n = raw.size();
  std::array<double, 4> mean{}, sd{};
  for (std::size_t m = 0; m < 4; ++m) {
    long double s = 0;
    for (const auto& r : raw) s += r[m];
    mean[m] = static_cast<double>(s / n);
    long double v = 0;
    for (const auto& r : raw) v += (r[m] - mean[m]) * (r[m] - mean[m]);
    sd[m] = std::sqrt(static_cast<double>(v / n));
  }
  auto total = [&](std::size_t i) {
    double t = 0;
    for (std::size_t m = 0; m < 4; ++m) t += sd[m] == 0 ? 0 : (raw[i][m] - mean[m]) / sd[m];
    return t;
  };
  std::vector<double> out;
  for (std::size_t t = 0; t + 20 < n; ++t) {
    double s = 0;
    for (int k = 1; k <= 20; ++k) s += std::pow(0.95, k) * (total(t + k) - total(t));
    out.push_back(s);
  }
  return out;
}

// One metric dip per 30 s interval; every decision 24 ticks apart.
inline PlayerTrajectory planted(int intervals, std::vector<std::size_t>* plants) {
  PlayerTrajectory t;
  t.won = true;
  t.match_id = "m";
  t.faction = "F3";
  const int n = 20 * intervals + 20;
  for (int i = 0; i < n; ++i) {
    const bool dip = i % 20 == 10 && i < 20 * intervals;
    if (dip && plants) plants->push_back(static_cast<std::size_t>(i));
    const double v = dip ? -1 : 0;
    t.points.push_back(DecisionPoint{i * 24, {v, v, v, v}, std::nullopt});
  }
  return t;
}

}  // namespace rtsarena::fixtures
