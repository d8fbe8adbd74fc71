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

#ifndef TAMER_TRAINER_TRAINER_H_
#define TAMER_TRAINER_TRAINER_H_

#include <cstdint>
#include <optional>

#include "tamer/common/rng.h"
#include "tamer/features/features.h"
#include "tamer/learn/credit.h"
#include "tamer/sim/action.h"

namespace tamer::trainer {

struct TrainerProfile {
  double initial_rate = 0.3;      // P(feedback) at step 0
  double half_life_steps = 800;   // <= 0 disables decay
  double error_rate = 0.05;       // P(sign flip), < 0.5
  double delay_lo = 0.2;          // seconds; lo == hi gives a constant delay
  double delay_hi = 0.8;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  friend bool operator==(const TrainerProfile&, const TrainerProfile&) = default;
};

// Emission probability at step t.
double feedback_rate(const TrainerProfile& profile, std::int64_t t);

// Reference policy: run right with sprint, jump when touching a wall or when
// a pit or enemy is close ahead. Reads only the feature vector, so it is a
// function the reward model can represent.
sim::Action oracle_action(const features::Theta& theta);

class SimulatedTrainer {
 public:
  SimulatedTrainer(TrainerProfile profile, std::uint64_t seed);

  // One decision per step. Always consumes one draw for emission; an emitted
  // event also consumes one draw for the flip and one for the delay.
  std::optional<learn::FeedbackEvent> judge(const features::Theta& theta,
                                            sim::Action agent_action,
                                            std::int64_t step,
                                            learn::TimeUs step_end);

  const TrainerProfile& profile() const { return profile_; }

 private:
  TrainerProfile profile_;
  Rng rng_;
};

}  // namespace tamer::trainer

#endif  // TAMER_TRAINER_TRAINER_H_
