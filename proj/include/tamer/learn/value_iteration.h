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

#ifndef TAMER_LEARN_VALUE_ITERATION_H_
#define TAMER_LEARN_VALUE_ITERATION_H_

#include <vector>

namespace tamer::learn {

// Finite MDP over a learned human-reward table.
class TabularMdp {
 public:
  // Throws std::invalid_argument if any T(s, a, .) is not a distribution
  // (sum 1 +/- 1e-12, entries >= 0) or gamma is outside [0, 1).
  TabularMdp(int num_states, int num_actions, std::vector<double> transitions,
             double gamma);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double gamma() const { return gamma_; }
  double transition(int s, int a, int next) const {
    return transitions_[static_cast<std::size_t>((s * num_actions_ + a) * num_states_ + next)];
  }

 private:
  int num_states_;
  int num_actions_;
  std::vector<double> transitions_;  // [s][a][s']
  double gamma_;
};

// Row-major [s][a] tables.
using QTable = std::vector<double>;
using RewardTable = std::vector<double>;

inline constexpr double kViTolerance = 1e-10;

// Sweeps Q(s,a) <- R(s,a) + gamma * sum_s' T(s,a,s') max_a' Q(s',a') until
// the largest change is below 1e-10.
QTable vi_update(const TabularMdp& mdp, const RewardTable& rhat);

// State-value form: V(s) <- max_a [R(s,a) + gamma * sum_s' T(s,a,s') V(s')].
std::vector<double> vi_state_values(const TabularMdp& mdp, const RewardTable& rhat);

// argmax_a R(s,a) + gamma * sum_s' T(s,a,s') V(s'); lowest index wins ties.
int select_action_vi(const TabularMdp& mdp, const RewardTable& rhat,
                     const std::vector<double>& values, int state);

}  // namespace tamer::learn

#endif  // TAMER_LEARN_VALUE_ITERATION_H_
