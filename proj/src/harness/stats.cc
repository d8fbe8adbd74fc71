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

#include "tamer/harness/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace tamer::harness {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("spearman: need at least 2 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean_of(rx), my = mean_of(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

TTestResult paired_t_test_greater(const std::vector<double>& a,
                                  const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("t-test: size mismatch");
  if (a.size() < 2) throw std::invalid_argument("t-test: need at least 2 pairs");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  TTestResult r;
  r.mean_diff = mean_of(d);
  r.df = static_cast<int>(d.size()) - 1;
  const double se = sample_std(d) / std::sqrt(static_cast<double>(d.size()));
  if (se == 0.0) {
    r.t = r.mean_diff > 0 ? INFINITY : (r.mean_diff < 0 ? -INFINITY : 0.0);
    r.p_value = r.mean_diff > 0 ? 0.0 : 1.0;
    return r;
  }
  r.t = r.mean_diff / se;
  const boost::math::students_t dist(static_cast<double>(r.df));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.t));
  return r;
}

Histogram make_histogram(const std::vector<double>& values, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("histogram: bin width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  if (values.empty()) return h;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  h.lo = std::floor(*mn / bin_width) * bin_width;
  const auto bins = static_cast<std::size_t>(std::floor((*mx - h.lo) / bin_width)) + 1;
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto i = static_cast<std::size_t>(std::floor((v - h.lo) / bin_width));
    ++h.counts[std::min(i, bins - 1)];
  }
  return h;
}

std::vector<double> histogram_modes(const Histogram& h, std::size_t min_count) {
  std::vector<double> modes;
  const std::size_t n = h.counts.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && h.counts[j + 1] == h.counts[i]) ++j;
    const std::size_t c = h.counts[i];
    const bool left_lower = i == 0 || h.counts[i - 1] < c;
    const bool right_lower = j + 1 == n || h.counts[j + 1] < c;
    if (c >= min_count && c > 0 && left_lower && right_lower) {
      const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0;
      modes.push_back(h.lo + h.bin_width * (mid + 0.5));
    }
    i = j + 1;
  }
  return modes;
}

double band_fraction(const std::vector<double>& values, double lo, double hi) {
  if (values.empty()) return 0.0;
  const auto inside = std::count_if(values.begin(), values.end(),
                                    [&](double v) { return v > lo && v < hi; });
  return static_cast<double>(inside) / static_cast<double>(values.size());
}

}  // namespace tamer::harness
