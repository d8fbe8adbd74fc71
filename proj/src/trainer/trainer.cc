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

#include "tamer/trainer/trainer.h"

#include <cmath>
#include <stdexcept>

namespace tamer::trainer {

namespace {

using features::Flag;
using features::kNumFlags;
using features::kSlotSize;

constexpr double kPitReach = 3.0;
constexpr double kEnemyReach = 3.0;
constexpr double kEnemyBehind = -0.5;
constexpr double kEnemyBelow = -1.5;
constexpr double kEnemyAbove = 2.0;

bool slot_has(const features::Theta& theta, int slot, Flag f) {
  return theta[static_cast<std::size_t>(slot * kSlotSize + static_cast<int>(f))] > 0.5;
}
double slot_dx(const features::Theta& theta, int slot) {
  return theta[static_cast<std::size_t>(slot * kSlotSize + kNumFlags)];
}
double slot_dy(const features::Theta& theta, int slot) {
  return theta[static_cast<std::size_t>(slot * kSlotSize + kNumFlags + 1)];
}

}  // namespace

void TrainerProfile::validate() const {
  if (!(initial_rate >= 0.0 && initial_rate <= 1.0)) {
    throw std::invalid_argument("initial_rate must lie in [0, 1]");
  }
  if (!std::isfinite(half_life_steps)) {
    throw std::invalid_argument("half_life_steps must be finite");
  }
  if (!(error_rate >= 0.0 && error_rate < 0.5)) {
    throw std::invalid_argument("error_rate must lie in [0, 0.5)");
  }
  if (!(delay_lo >= 0.0 && delay_hi >= delay_lo && std::isfinite(delay_hi))) {
    throw std::invalid_argument("delay range must satisfy 0 <= lo <= hi");
  }
}

double feedback_rate(const TrainerProfile& profile, std::int64_t t) {
  if (profile.half_life_steps <= 0.0) return profile.initial_rate;
  return profile.initial_rate *
         std::exp2(-static_cast<double>(t) / profile.half_life_steps);
}

sim::Action oracle_action(const features::Theta& theta) {
  bool jump = theta[2 * kSlotSize] > 0.5;  // right_of_wall
  for (int slot = 0; slot < 2 && !jump; ++slot) {
    const double dx = slot_dx(theta, slot);
    const double dy = slot_dy(theta, slot);
    if (slot_has(theta, slot, Flag::kPit) && dx > 0.0 && dx <= kPitReach) jump = true;
    if (slot_has(theta, slot, Flag::kEnemy) && dx > kEnemyBehind &&
        dx <= kEnemyReach && dy > kEnemyBelow && dy < kEnemyAbove) {
      jump = true;
    }
  }
  return sim::Action{sim::Direction::kRight, jump, true};
}

SimulatedTrainer::SimulatedTrainer(TrainerProfile profile, std::uint64_t seed)
    : profile_(profile), rng_(seed) {
  profile_.validate();
}

std::optional<learn::FeedbackEvent> SimulatedTrainer::judge(
    const features::Theta& theta, sim::Action agent_action, std::int64_t step,
    learn::TimeUs step_end) {
  const double u = rng_.uniform();
  if (!(u < feedback_rate(profile_, step))) return std::nullopt;
  double value = agent_action == oracle_action(theta) ? 1.0 : -1.0;
  if (rng_.bernoulli(profile_.error_rate)) value = -value;
  const double delay = rng_.uniform(profile_.delay_lo, profile_.delay_hi);
  return learn::FeedbackEvent{value, step_end + learn::from_seconds(delay)};
}

}  // namespace tamer::trainer
