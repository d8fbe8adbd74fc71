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

#ifndef TAMER_LEARN_CREDIT_H_
#define TAMER_LEARN_CREDIT_H_

#include <cstdint>
#include <deque>
#include <vector>

#include "tamer/features/features.h"
#include "tamer/sim/action.h"

namespace tamer::learn {

// Timestamps are integer microseconds so that logged decimal seconds (six
// places) round-trip exactly.
using TimeUs = std::int64_t;

inline constexpr double to_seconds(TimeUs t) { return static_cast<double>(t) / 1e6; }
TimeUs from_seconds(double seconds);

// Density of the trainer's feedback delay. Only the uniform family is
// supported.
class DelayPdf {
 public:
  // Throws std::invalid_argument unless 0 <= lo < hi.
  static DelayPdf uniform(double lo, double hi);
  DelayPdf() : DelayPdf(uniform(0.2, 0.8)) {}

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double density(double t) const;
  double cdf(double t) const;

  friend bool operator==(const DelayPdf&, const DelayPdf&) = default;

 private:
  DelayPdf(double lo, double hi) : lo_(lo), hi_(hi) {}
  double lo_;
  double hi_;
};

// One keypress: value is exactly -1 or +1.
struct FeedbackEvent {
  double value = 1.0;
  TimeUs time = 0;
  friend bool operator==(const FeedbackEvent&, const FeedbackEvent&) = default;
};

struct WindowStep {
  std::int64_t index = 0;
  features::Theta theta{};
  sim::Action action;
  TimeUs start = 0;
  TimeUs end = 0;
};

// Recent steps, contiguous and time ordered.
class StepWindow {
 public:
  // Throws std::invalid_argument if the step does not start where the
  // previous one ended or ends before it starts.
  void push(WindowStep step);
  // Drops steps that ended before `cutoff`.
  void trim_before(TimeUs cutoff);

  const std::deque<WindowStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }

 private:
  std::deque<WindowStep> steps_;
};

struct StepCredit {
  std::int64_t index = 0;
  double credit = 0.0;
};

// Credit of the step spanning [t0, t1] is F(T - t0) - F(T - t1) for an event
// at T. Steps with zero credit are omitted; an empty window yields nothing.
std::vector<StepCredit> assign_credit(const FeedbackEvent& event,
                                      const StepWindow& window,
                                      const DelayPdf& pdf);

struct CreditedSample {
  std::int64_t index = 0;
  features::Theta theta{};
  sim::Action action;
  double h = 0.0;
};

// Per step h = sum(value * credit) over events; zero labels are dropped.
std::vector<CreditedSample> aggregate_labels(
    const std::vector<FeedbackEvent>& events, const StepWindow& window,
    const DelayPdf& pdf);

}  // namespace tamer::learn

#endif  // TAMER_LEARN_CREDIT_H_
