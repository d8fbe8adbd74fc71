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

// Independent reference computations shared by the unit and acceptance
// tests. None of these call into the code under test beyond plain data.
#ifndef TAMER_TESTS_ORACLES_H_
#define TAMER_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace tamer::oracle {

// Adaptive Simpson on a smooth piece.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double left = (m - a) / 6.0 * (f(a) + 4.0 * f(lm) + f(m));
  const double right = (b - m) / 6.0 * (f(m) + 4.0 * f(rm) + f(b));
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, eps / 2, depth - 1) + simpson(f, m, b, eps / 2, depth - 1);
}

// Integral of f over [a, b], split at the given discontinuities so each
// piece is smooth.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> breaks) {
  if (!(b > a)) return 0.0;
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi <= lo) continue;
    // Evaluate strictly inside the piece so endpoint conventions of f
    // cannot leak across a jump.
    const double d = (hi - lo) * 1e-12;
    total += simpson(f, lo + d, hi - d, 1e-13, 30) * (hi - lo) / (hi - lo - 2 * d);
  }
  return total;
}

// Mass of the uniform(lo, hi) delay density over delays in [d0, d1].
inline double uniform_mass(double lo, double hi, double d0, double d1) {
  const auto density = [lo, hi](double t) { return (t >= lo && t <= hi) ? 1.0 / (hi - lo) : 0.0; };
  return integrate(density, d0, d1, {lo, hi});
}

// Brute-force value iteration on Q for a dense [s][a][s'] transition tensor.
inline std::vector<double> brute_force_q(int ns, int na, const std::vector<double>& t,
                                         const std::vector<double>& r, double gamma, int sweeps) {
  std::vector<double> q(static_cast<std::size_t>(ns * na), 0.0), next(q.size());
  for (int it = 0; it < sweeps; ++it) {
    for (int s = 0; s < ns; ++s) {
      for (int a = 0; a < na; ++a) {
        double future = 0.0;
        for (int s2 = 0; s2 < ns; ++s2) {
          double best = q[static_cast<std::size_t>(s2 * na)];
          for (int a2 = 1; a2 < na; ++a2) best = std::max(best, q[static_cast<std::size_t>(s2 * na + a2)]);
          future += t[static_cast<std::size_t>((s * na + a) * ns + s2)] * best;
        }
        next[static_cast<std::size_t>(s * na + a)] = r[static_cast<std::size_t>(s * na + a)] + gamma * future;
      }
    }
    q.swap(next);
  }
  return q;
}

}  // namespace tamer::oracle

#endif  // TAMER_TESTS_ORACLES_H_
