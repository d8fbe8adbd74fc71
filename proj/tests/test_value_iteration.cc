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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "tamer/common/rng.h"
#include "tamer/learn/value_iteration.h"

namespace tamer::learn {
namespace {

struct RandomMdp {
  int ns, na;
  std::vector<double> t, r;
  double gamma;
};

RandomMdp random_mdp(Rng& rng, double gamma) {
  RandomMdp m;
  m.ns = rng.range(1, 6);
  m.na = rng.range(1, 4);
  m.gamma = gamma;
  for (int sa = 0; sa < m.ns * m.na; ++sa) {
    std::vector<double> row(static_cast<std::size_t>(m.ns));
    double sum = 0.0;
    for (auto& p : row) sum += (p = rng.uniform());
    for (auto& p : row) p /= sum;
    // Absorb the rounding residue so the row sums to 1 within 1e-12.
    double check = 0.0;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) check += row[i];
    row.back() = std::max(0.0, 1.0 - check);
    m.t.insert(m.t.end(), row.begin(), row.end());
    m.r.push_back(rng.uniform(-1.0, 1.0));
  }
  return m;
}

TEST(ValueIteration, GammaZeroReturnsRewards) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto m = random_mdp(rng, 0.0);
    const TabularMdp mdp(m.ns, m.na, m.t, 0.0);
    EXPECT_EQ(vi_update(mdp, m.r), m.r);
  }
}

TEST(ValueIteration, TwoStateChain) {
  // State 0 loops on itself with reward 1; state 1 loops with reward 0.
  const TabularMdp mdp(2, 1, {1.0, 0.0, 0.0, 1.0}, 0.5);
  const auto q = vi_update(mdp, {1.0, 0.0});
  EXPECT_NEAR(q[0], 2.0, 1e-9);
  EXPECT_NEAR(q[1], 0.0, 1e-12);
  const auto v = vi_state_values(mdp, {1.0, 0.0});
  EXPECT_NEAR(v[0], 2.0, 1e-9);
}

TEST(ValueIteration, RandomMdpsMatchLongSweep) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto m = random_mdp(rng, rng.uniform(0.0, 0.95));
    const TabularMdp mdp(m.ns, m.na, m.t, m.gamma);
    const auto q = vi_update(mdp, m.r);
    const auto oracle = oracle::brute_force_q(m.ns, m.na, m.t, m.r, m.gamma, 10'000);
    for (std::size_t k = 0; k < q.size(); ++k) EXPECT_NEAR(q[k], oracle[k], 1e-8);
    // V is the row max of Q.
    const auto v = vi_state_values(mdp, m.r);
    for (int s = 0; s < m.ns; ++s) {
      double best = oracle[static_cast<std::size_t>(s * m.na)];
      for (int a = 1; a < m.na; ++a) best = std::max(best, oracle[static_cast<std::size_t>(s * m.na + a)]);
      EXPECT_NEAR(v[static_cast<std::size_t>(s)], best, 1e-8);
    }
  }
}

TEST(ValueIteration, SelectUsesDiscountedLookahead) {
  // From state 0, action 0 pays 1 now and lands in a zero state; action 1
  // pays 0 now and lands in a state worth 10.
  std::vector<double> t(3 * 2 * 3, 0.0);
  auto set = [&](int s, int a, int n) { t[static_cast<std::size_t>((s * 2 + a) * 3 + n)] = 1.0; };
  set(0, 0, 1);
  set(0, 1, 2);
  for (int a = 0; a < 2; ++a) {
    set(1, a, 1);
    set(2, a, 2);
  }
  const std::vector<double> r = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const std::vector<double> v = {0.0, 0.0, 10.0};
  EXPECT_EQ(select_action_vi(TabularMdp(3, 2, t, 0.5), r, v, 0), 1);  // 0.5 * 10 > 1
  EXPECT_EQ(select_action_vi(TabularMdp(3, 2, t, 0.05), r, v, 0), 0);  // 0.05 * 10 < 1
  // Equal values: lowest index.
  EXPECT_EQ(select_action_vi(TabularMdp(3, 2, t, 0.1), r, v, 0), 0);
}

TEST(ValueIteration, RejectsBadInputs) {
  EXPECT_THROW(TabularMdp(1, 1, {1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(TabularMdp(1, 1, {1.0}, -0.1), std::invalid_argument);
  EXPECT_THROW(TabularMdp(2, 1, {0.5, 0.4, 0.0, 1.0}, 0.5), std::invalid_argument);
  EXPECT_THROW(TabularMdp(2, 1, {1.5, -0.5, 0.0, 1.0}, 0.5), std::invalid_argument);
  const TabularMdp mdp(1, 1, {1.0}, 0.5);
  EXPECT_THROW(vi_update(mdp, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(select_action_vi(mdp, {1.0}, {0.0}, 1), std::invalid_argument);
}

}  // namespace
}  // namespace tamer::learn
