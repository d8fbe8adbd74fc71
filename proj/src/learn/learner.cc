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

#include "tamer/learn/learner.h"

#include <stdexcept>

namespace tamer::learn {

TamerLearner::TamerLearner(const LearnerConfig& config)
    : config_(config), model_(config.model) {
  if (config.window_seconds < config.pdf.hi()) {
    throw std::invalid_argument("credit window must cover the delay pdf support");
  }
}

void TamerLearner::push_step(std::int64_t index, const Theta& theta,
                             sim::Action action, TimeUs start, TimeUs end) {
  if (!window_.empty() && window_.steps().back().index + 1 != index) {
    throw std::invalid_argument("steps must be pushed in index order");
  }
  window_.push({index, theta, action, start, end});
  labels_.push_back(0.0);
  finalized_.push_back(false);

  // Keep pending steps and the last window_seconds of finalized ones.
  const TimeUs cutoff = end - from_seconds(config_.window_seconds);
  while (first_pending_ > 0 && window_.steps().front().end < cutoff) {
    window_.trim_before(window_.steps().front().end + 1);
    labels_.pop_front();
    finalized_.pop_front();
    --first_pending_;
  }
}

void TamerLearner::set_label(std::int64_t index, double h) {
  if (window_.empty()) throw std::invalid_argument("no such pending step");
  const auto offset = index - window_.steps().front().index;
  if (offset < 0 || offset >= static_cast<std::int64_t>(window_.size()) ||
      finalized_[static_cast<std::size_t>(offset)]) {
    throw std::invalid_argument("no such pending step");
  }
  labels_[static_cast<std::size_t>(offset)] = h;
}

std::vector<StepCredit> TamerLearner::add_feedback(const FeedbackEvent& event) {
  if (!training_) return {};
  auto credits = assign_credit(event, window_, config_.pdf);
  const auto front = window_.empty() ? 0 : window_.steps().front().index;
  for (const auto& c : credits) {
    const auto offset = static_cast<std::size_t>(c.index - front);
    // Finalized steps always receive zero credit from events at or after
    // their finalization time, so only pending labels move here.
    labels_[offset] += event.value * c.credit;
  }
  return credits;
}

FinalizedLabel TamerLearner::finalize_front_pending() {
  const auto& step = window_.steps()[first_pending_];
  FinalizedLabel out{step.index, labels_[first_pending_], false};
  if (!training_) {
    out.h = 0.0;
  } else if (out.h != 0.0) {
    model_.update(step.theta, step.action, out.h);
    out.applied = true;
    ++updates_;
  }
  labels_[first_pending_] = out.h;
  finalized_[first_pending_] = true;
  ++first_pending_;
  return out;
}

std::vector<FinalizedLabel> TamerLearner::finalize_until(TimeUs now) {
  std::vector<FinalizedLabel> out;
  const TimeUs reach = from_seconds(config_.pdf.hi());
  while (first_pending_ < window_.size() &&
         window_.steps()[first_pending_].end + reach <= now) {
    out.push_back(finalize_front_pending());
  }
  return out;
}

std::vector<FinalizedLabel> TamerLearner::flush() {
  std::vector<FinalizedLabel> out;
  while (first_pending_ < window_.size()) out.push_back(finalize_front_pending());
  return out;
}

}  // namespace tamer::learn
