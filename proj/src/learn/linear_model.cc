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

#include "tamer/learn/linear_model.h"

#include <cmath>
#include <stdexcept>

namespace tamer::learn {

double dot(const Theta& a, const Theta& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_sample(const Theta& theta, double h) {
  if (!std::isfinite(h)) throw std::invalid_argument("label is not finite");
  if (h == 0.0) throw std::invalid_argument("zero label submitted for learning");
  for (double v : theta) {
    if (!std::isfinite(v)) throw std::invalid_argument("feature is not finite");
  }
}

LinearRewardModel::LinearRewardModel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("learning rate must be positive");
  }
}

double LinearRewardModel::update(const Theta& theta, sim::Action action,
                                 double h) {
  check_sample(theta, h);
  Theta& w = weights_[static_cast<std::size_t>(action.index())];
  const double delta = h - dot(w, theta);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += alpha_ * delta * theta[i];
  return delta;
}

}  // namespace tamer::learn
