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

#ifndef TAMER_LEARN_LINEAR_MODEL_H_
#define TAMER_LEARN_LINEAR_MODEL_H_

#include <array>

#include "tamer/features/features.h"
#include "tamer/sim/action.h"

namespace tamer::learn {

using features::Theta;

inline constexpr double kDefaultAlpha = 0.001;

double dot(const Theta& a, const Theta& b);

// Throws std::invalid_argument on a non-finite Theta or label, or h == 0
// (zero labels never reach the learner).
void check_sample(const Theta& theta, double h);

// R_H(s, a) = w[a] . Theta: one weight block per action, which is the joint
// basis one-hot(a) x Theta.
class LinearRewardModel {
 public:
  explicit LinearRewardModel(double alpha = kDefaultAlpha);

  double predict(const Theta& theta, sim::Action action) const {
    return dot(weights_[static_cast<std::size_t>(action.index())], theta);
  }

  // delta = h - w[a].Theta; w[a] += alpha * delta * Theta. Returns delta.
  double update(const Theta& theta, sim::Action action, double h);

  double alpha() const { return alpha_; }
  const Theta& weights(sim::Action a) const {
    return weights_[static_cast<std::size_t>(a.index())];
  }
  Theta& mutable_weights(sim::Action a) {
    return weights_[static_cast<std::size_t>(a.index())];
  }

  friend bool operator==(const LinearRewardModel&, const LinearRewardModel&) = default;

 private:
  double alpha_;
  std::array<Theta, sim::kNumActions> weights_{};
};

}  // namespace tamer::learn

#endif  // TAMER_LEARN_LINEAR_MODEL_H_
