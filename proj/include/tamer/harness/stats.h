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

#ifndef TAMER_HARNESS_STATS_H_
#define TAMER_HARNESS_STATS_H_

#include <cstddef>
#include <vector>

namespace tamer::harness {

double mean_of(const std::vector<double>& xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_std(const std::vector<double>& xs);

// 1-based ranks, ties share the average of the ranks they span.
std::vector<double> average_ranks(const std::vector<double>& xs);

// Pearson correlation of the tie-averaged ranks. Returns 0 when either side
// is constant. Throws std::invalid_argument on size mismatch or n < 2.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

struct TTestResult {
  double mean_diff = 0.0;
  double t = 0.0;
  int df = 0;
  double p_value = 1.0;  // one-sided, H1: mean(a - b) > 0
};

// Paired one-sided t-test of a against b. Needs at least 2 pairs. With zero
// variance in the differences, p is 0 if the mean difference is positive and
// 1 otherwise.
TTestResult paired_t_test_greater(const std::vector<double>& a,
                                  const std::vector<double>& b);

struct Histogram {
  double lo = 0.0;
  double bin_width = 1.0;
  std::vector<std::size_t> counts;

  double bin_lo(std::size_t i) const { return lo + bin_width * static_cast<double>(i); }
};

// Bins aligned to multiples of `bin_width`, covering min..max of `values`.
Histogram make_histogram(const std::vector<double>& values, double bin_width);

// Centers of local maxima. A plateau of equal counts counts once, at its
// middle bin. Bins holding fewer than `min_count` values are never modes.
std::vector<double> histogram_modes(const Histogram& h, std::size_t min_count = 1);

// Fraction of values strictly inside (lo, hi).
double band_fraction(const std::vector<double>& values, double lo, double hi);

}  // namespace tamer::harness

#endif  // TAMER_HARNESS_STATS_H_
