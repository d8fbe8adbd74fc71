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

#include "tamer/learn/value_iteration.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tamer::learn {

TabularMdp::TabularMdp(int num_states, int num_actions,
                       std::vector<double> transitions, double gamma)
    : num_states_(num_states),
      num_actions_(num_actions),
      transitions_(std::move(transitions)),
      gamma_(gamma) {
  if (num_states < 1 || num_actions < 1) {
    throw std::invalid_argument("MDP needs at least one state and action");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("discount must lie in [0, 1)");
  }
  const auto expected = static_cast<std::size_t>(num_states) * num_actions * num_states;
  if (transitions_.size() != expected) {
    throw std::invalid_argument("transition tensor has the wrong size");
  }
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < num_actions; ++a) {
      double sum = 0.0;
      for (int n = 0; n < num_states; ++n) {
        const double p = transition(s, a, n);
        if (!(p >= 0.0)) throw std::invalid_argument("negative transition probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("transition row does not sum to 1");
      }
    }
  }
}

namespace {

void check_rewards(const TabularMdp& mdp, const RewardTable& rhat) {
  if (rhat.size() != static_cast<std::size_t>(mdp.num_states() * mdp.num_actions())) {
    throw std::invalid_argument("reward table has the wrong size");
  }
}

double backup(const TabularMdp& mdp, const RewardTable& rhat,
              const std::vector<double>& values, int s, int a) {
  double expect = 0.0;
  for (int n = 0; n < mdp.num_states(); ++n) {
    expect += mdp.transition(s, a, n) * values[static_cast<std::size_t>(n)];
  }
  return rhat[static_cast<std::size_t>(s * mdp.num_actions() + a)] + mdp.gamma() * expect;
}

}  // namespace

QTable vi_update(const TabularMdp& mdp, const RewardTable& rhat) {
  check_rewards(mdp, rhat);
  const int ns = mdp.num_states();
  const int na = mdp.num_actions();
  QTable q(static_cast<std::size_t>(ns * na), 0.0);
  std::vector<double> vmax(static_cast<std::size_t>(ns), 0.0);
  for (;;) {
    for (int s = 0; s < ns; ++s) {
      const auto row = q.begin() + s * na;
      vmax[static_cast<std::size_t>(s)] = *std::max_element(row, row + na);
    }
    double change = 0.0;
    for (int s = 0; s < ns; ++s) {
      for (int a = 0; a < na; ++a) {
        const double next = backup(mdp, rhat, vmax, s, a);
        auto& cell = q[static_cast<std::size_t>(s * na + a)];
        change = std::max(change, std::abs(next - cell));
        cell = next;
      }
    }
    if (change < kViTolerance) return q;
  }
}

std::vector<double> vi_state_values(const TabularMdp& mdp, const RewardTable& rhat) {
  check_rewards(mdp, rhat);
  std::vector<double> v(static_cast<std::size_t>(mdp.num_states()), 0.0);
  for (;;) {
    std::vector<double> next(v.size());
    double change = 0.0;
    for (int s = 0; s < mdp.num_states(); ++s) {
      double best = backup(mdp, rhat, v, s, 0);
      for (int a = 1; a < mdp.num_actions(); ++a) best = std::max(best, backup(mdp, rhat, v, s, a));
      next[static_cast<std::size_t>(s)] = best;
      change = std::max(change, std::abs(best - v[static_cast<std::size_t>(s)]));
    }
    v = std::move(next);
    if (change < kViTolerance) return v;
  }
}

int select_action_vi(const TabularMdp& mdp, const RewardTable& rhat,
                     const std::vector<double>& values, int state) {
  check_rewards(mdp, rhat);
  if (state < 0 || state >= mdp.num_states()) throw std::invalid_argument("state out of range");
  int best = 0;
  double best_value = backup(mdp, rhat, values, state, 0);
  for (int a = 1; a < mdp.num_actions(); ++a) {
    const double v = backup(mdp, rhat, values, state, a);
    if (v > best_value) {
      best = a;
      best_value = v;
    }
  }
  return best;
}

}  // namespace tamer::learn
