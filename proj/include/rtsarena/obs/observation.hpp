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

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::obs {

using sim::Cell;
using sim::Pool;
using sim::UnitId;

struct Point {
  double x = 0;
  double y = 0;
};

struct UnitView {
  UnitId id = 0;
  std::string kind;
  Cell pos;
  Pool health;
  Pool shield;
  Pool energy;
  bool worker = false;
  bool collecting = false;
  std::string state;                    // "idle", "attacking [249] Nexus", ...
  std::vector<std::string> production;  // replaces the state line when non-empty
  std::optional<Pool> harvesters;
  std::optional<int> larva;
};

struct NodeView {
  UnitId id = 0;
  Cell pos;
};

// Everything the renderer may print, already restricted to what the player sees.
struct FoggedView {
  int tick = 0;
  int ticks_per_second = 16;
  sim::Faction faction = sim::Faction::F3;
  sim::PlayerState player;
  int map_width = 48;
  int map_height = 48;
  Point anchor;
  std::vector<UnitView> units;       // own mobile units
  std::vector<UnitView> structures;  // own structures
  std::vector<UnitView> enemy_units;
  std::vector<UnitView> enemy_structures;
  std::vector<NodeView> minerals;  // visible, unoccupied
  std::vector<NodeView> geysers;
  std::map<UnitId, std::vector<std::string>> abilities;  // printed (legal) abilities
};

// Greedy nearest-neighbour chain from `anchor`; ties go to the lowest id.
template <class T>
std::vector<T> order_units(std::vector<T> units, Point anchor) {
  std::vector<T> out;
  out.reserve(units.size());
  double cx = anchor.x, cy = anchor.y;
  while (!units.empty()) {
    std::size_t best = 0;
    double best_d = 0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      const double dx = units[i].pos.x - cx;
      const double dy = units[i].pos.y - cy;
      const double d = dx * dx + dy * dy;
      if (i == 0 || d < best_d || (d == best_d && units[i].id < units[best].id)) {
        best = i;
        best_d = d;
      }
    }
    cx = units[best].pos.x;
    cy = units[best].pos.y;
    out.push_back(std::move(units[best]));
    units.erase(units.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

// Sorted by distance from `anchor`, ties by lowest id.
template <class T>
std::vector<T> order_by_distance(std::vector<T> items, Point anchor) {
  auto d = [&](const T& t) {
    const double dx = t.pos.x - anchor.x;
    const double dy = t.pos.y - anchor.y;
    return dx * dx + dy * dy;
  };
  std::sort(items.begin(), items.end(), [&](const T& a, const T& b) {
    const double da = d(a), db = d(b);
    return da != db ? da < db : a.id < b.id;
  });
  return items;
}

struct WorkerGroup {
  std::string kind;
  std::vector<UnitId> ids;
};

struct Aggregated {
  std::vector<WorkerGroup> groups;  // collecting workers, one group per kind
  std::vector<UnitView> individuals;
};

// Input order is preserved inside groups and among individuals.
Aggregated aggregate_workers(const std::vector<UnitView>& units);

inline constexpr std::size_t kHistoryLength = 10;

class ActionHistory {
 public:
  explicit ActionHistory(std::size_t capacity = kHistoryLength) : capacity_(capacity) {}
  void push(const sim::ActionRequest& action);
  const std::deque<std::string>& lines() const { return lines_; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<std::string> lines_;
};

struct Section {
  std::string name;
  std::string text;
};

struct TextObservation {
  std::vector<Section> sections;
  std::string full_text;
  FoggedView source;
};

inline constexpr const char* kSectionNames[] = {
    "Round state",         "Own units",          "Unit abilities",
    "Own structures",      "Structure abilities", "Visible enemy units",
    "Visible enemy structures", "Action history", "Map information",
    "Ability description"};

FoggedView make_view(const sim::GameState& state, sim::PlayerId player);
TextObservation render_view(const FoggedView& view, const ActionHistory& history);
TextObservation render_observation(const sim::GameState& state, sim::PlayerId player,
                                   const ActionHistory& history);

// "04:18"
std::string format_clock(int tick, int ticks_per_second);

}  // namespace rtsarena::obs
