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

#include "tamer/learn/credit.h"

#include <cmath>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

namespace tamer::learn {

TimeUs from_seconds(double seconds) {
  return static_cast<TimeUs>(std::llround(seconds * 1e6));
}

DelayPdf DelayPdf::uniform(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("delay pdf needs 0 <= lo < hi, got [" +
                                std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
  return DelayPdf(lo, hi);
}

double DelayPdf::density(double t) const {
  return (t >= lo_ && t <= hi_) ? 1.0 / (hi_ - lo_) : 0.0;
}

double DelayPdf::cdf(double t) const {
  if (t <= lo_) return 0.0;
  if (t >= hi_) return 1.0;
  return (t - lo_) / (hi_ - lo_);
}

void StepWindow::push(WindowStep step) {
  if (step.end <= step.start) {
    throw std::invalid_argument("step must end after it starts");
  }
  if (!steps_.empty() && steps_.back().end != step.start) {
    throw std::invalid_argument("window steps must be contiguous");
  }
  steps_.push_back(step);
}

void StepWindow::trim_before(TimeUs cutoff) {
  while (!steps_.empty() && steps_.front().end < cutoff) steps_.pop_front();
}

std::vector<StepCredit> assign_credit(const FeedbackEvent& event,
                                      const StepWindow& window,
                                      const DelayPdf& pdf) {
  std::vector<StepCredit> out;
  if (window.empty()) {
    std::cerr << "warning: feedback at t=" << to_seconds(event.time)
              << "s discarded, no steps in window\n";
    return out;
  }
  if (event.time < window.steps().front().start) {
    throw std::invalid_argument("feedback precedes the credit window");
  }
  for (const auto& s : window.steps()) {
    // Elapsed time from each step boundary to the event.
    const double since_start = to_seconds(event.time - s.start);
    const double since_end = to_seconds(event.time - s.end);
    const double c = pdf.cdf(since_start) - pdf.cdf(since_end);
    if (c > 0.0) out.push_back({s.index, c});
  }
  return out;
}

std::vector<CreditedSample> aggregate_labels(
    const std::vector<FeedbackEvent>& events, const StepWindow& window,
    const DelayPdf& pdf) {
  std::map<std::int64_t, double> h;
  for (const auto& ev : events) {
    for (const auto& sc : assign_credit(ev, window, pdf)) {
      h[sc.index] += ev.value * sc.credit;
    }
  }
  std::vector<CreditedSample> out;
  for (const auto& s : window.steps()) {
    auto it = h.find(s.index);
    if (it == h.end() || it->second == 0.0) continue;
    out.push_back({s.index, s.theta, s.action, it->second});
  }
  return out;
}

}  // namespace tamer::learn
