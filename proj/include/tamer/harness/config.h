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

#ifndef TAMER_HARNESS_CONFIG_H_
#define TAMER_HARNESS_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tamer/learn/learner.h"
#include "tamer/sim/physics.h"
#include "tamer/trainer/trainer.h"

namespace tamer::harness {

struct EvalConfig {
  int games = 20;
  int step_cap = 3000;
  std::uint64_t seed_base = 9000;  // game i uses seed_base + i

  std::vector<std::uint64_t> seeds() const;
  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

struct ExperimentConfig {
  sim::PhysicsConfig physics;
  learn::LearnerConfig learner;
  trainer::TrainerProfile trainer;
  // Simulated sessions run slower than live play (24 Hz) so that the
  // trainer's 0.2-0.8 s delay spans a few steps rather than a dozen.
  double tick_rate = 10.0;
  std::uint64_t level_seed = 121;
  int checkpoint_interval = 200;
  int max_steps = 2800;
  EvalConfig eval;
  int threads = 0;  // 0 = hardware concurrency

  // Throws std::invalid_argument on inconsistent values.
  void validate() const;
};

nlohmann::json physics_to_json(const sim::PhysicsConfig& p);
sim::PhysicsConfig physics_from_json(const nlohmann::json& doc);
nlohmann::json trainer_to_json(const trainer::TrainerProfile& p);
trainer::TrainerProfile trainer_from_json(const nlohmann::json& doc);

// Missing keys keep their defaults; unknown keys are rejected.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

}  // namespace tamer::harness

#endif  // TAMER_HARNESS_CONFIG_H_
