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

#ifndef TAMER_LEARN_REWARD_MODEL_H_
#define TAMER_LEARN_REWARD_MODEL_H_

#include <cstdint>
#include <string>
#include <variant>

#include "json.hpp"
#include "tamer/learn/linear_model.h"
#include "tamer/learn/model_tree.h"

namespace tamer::learn {

enum class ModelKind { kLinear, kTree };

struct ModelConfig {
  ModelKind kind = ModelKind::kTree;
  double alpha = kDefaultAlpha;
  TreeParams tree;
};

// Value-semantic handle over either human-reward model.
class RewardModel {
 public:
  explicit RewardModel(const ModelConfig& config = {});
  explicit RewardModel(LinearRewardModel m) : impl_(std::move(m)) {}
  explicit RewardModel(ModelTreeRewardModel m) : impl_(std::move(m)) {}

  ModelKind kind() const;
  double predict(const Theta& theta, sim::Action action) const;
  double update(const Theta& theta, sim::Action action, double h);

  // Deterministic fingerprint of the full learner state.
  std::uint64_t hash() const;

  const LinearRewardModel* linear() const { return std::get_if<LinearRewardModel>(&impl_); }
  const ModelTreeRewardModel* tree() const { return std::get_if<ModelTreeRewardModel>(&impl_); }

  friend bool operator==(const RewardModel&, const RewardModel&) = default;

 private:
  std::variant<LinearRewardModel, ModelTreeRewardModel> impl_;
};

// Greedy argmax over the 12 actions; ties go to the lowest index.
sim::Action select_action(const RewardModel& model, const Theta& theta);

inline constexpr int kModelFormatVersion = 1;
nlohmann::json model_to_json(const RewardModel& model);
RewardModel model_from_json(const nlohmann::json& doc);

nlohmann::json model_config_to_json(const ModelConfig& config);
ModelConfig model_config_from_json(const nlohmann::json& doc);

}  // namespace tamer::learn

#endif  // TAMER_LEARN_REWARD_MODEL_H_
