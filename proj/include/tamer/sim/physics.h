// Copyright 2026 The Tamer Mario Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAMER_SIM_PHYSICS_H_
#define TAMER_SIM_PHYSICS_H_

namespace tamer::sim {

// Simplified platformer kinematics. Units are tiles and steps.
struct PhysicsConfig {
  double gravity = 0.1;
  double jump_impulse = 1.0;
  double max_fall_speed = 1.0;
  double walk_speed = 0.2;
  double sprint_speed = 0.4;
  double stomp_bounce = 0.5;
  double mario_width = 0.75;
  double mario_height = 1.0;
  double walker_speed = 0.08;
  double shell_speed = 0.16;
  double fireball_speed = 0.2;
  double fireball_hop = 0.45;
  double mushroom_speed = 0.08;
  // Monsters stay frozen until Mario is this close horizontally.
  double activation_range = 12.0;
};

}  // namespace tamer::sim

#endif  // TAMER_SIM_PHYSICS_H_
