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

#include <vector>

#include "rtsarena/sim/kernel.hpp"

namespace rtsarena::sim {

struct PolicyParams {
  int act_interval = 32;      // ticks between macro decisions
  int worker_target = 18;
  int production_target = 1;  // production structures (extra hatcheries for F2)
  int attack_supply = 30;     // idle army supply that launches an attack
  bool focus_fire = false;    // retarget to the weakest enemy in range
  bool tech = false;          // second unit type
  bool abilities = false;     // chrono / MULE / inject
};

// Parameter row for builtin levels 1..7; throws std::invalid_argument otherwise.
PolicyParams builtin_params(int level);

// Idle workers to the nearest under-saturated node; idle army in contact
// attacks the weakest visible enemy.
ActionBatch auto_micro(const GameState& state, PlayerId player);

ActionBatch builtin_policy(const GameState& state, PlayerId player, int level);
ActionBatch policy_with_params(const GameState& state, PlayerId player, const PolicyParams& params);

// Merges `extra` into `base`, skipping actions whose units are already commanded.
void merge_uncommanded(ActionBatch& base, const ActionBatch& extra);

// Drops every action that would fault given the actions kept before it.
ActionBatch filter_valid(const GameState& state, PlayerId player, const ActionBatch& batch);

}  // namespace rtsarena::sim
