// Copyright 2026 The shiftsched Authors
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

#pragma once

// Erlang-C staffing: per-interval required agents from call volumes.

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftsched/core.hpp"

namespace shiftsched::erlang {

struct TrafficPoint {
  double calls = 0.0;  // arrivals in the interval
  double interval_seconds = 3600.0;
  double aht_seconds = 300.0;
};

struct SlaSpec {
  double target = 0.8;             // fraction answered within the threshold
  double threshold_seconds = 20.0;
};

inline double offered_load(const TrafficPoint& tp) {
  if (tp.calls < 0 || tp.aht_seconds < 0 || !(tp.interval_seconds > 0)) {
    throw InputError("invalid traffic point");
  }
  return tp.calls * tp.aht_seconds / tp.interval_seconds;
}

// Erlang-B blocking probability via the stable recursion
// B(0) = 1, B(k) = a B(k-1) / (k + a B(k-1)).
inline double erlang_b(int n, double a) {
  double b = 1.0;
  for (int k = 1; k <= n; ++k) b = a * b / (k + a * b);
  return b;
}

// Probability that an arrival waits, with n agents and a erlangs offered.
// Saturated systems (a >= n) always wait.
inline double erlang_c_wait_probability(int n, double a) {
  if (a >= n) return 1.0;
  if (a <= 0.0) return 0.0;
  const double b = erlang_b(n, a);
  const double c = n * b / (n - a * (1.0 - b));
  return std::clamp(c, 0.0, 1.0);
}

// Fraction answered within threshold_seconds.
inline double service_level(int n, double a, double aht_seconds, double threshold_seconds) {
  if (a <= 0.0) return n >= 1 ? 1.0 : 0.0;
  if (a >= n) return 0.0;
  const double c = erlang_c_wait_probability(n, a);
  const double sl = 1.0 - c * std::exp(-(n - a) * threshold_seconds / aht_seconds);
  return std::clamp(sl, 0.0, 1.0);
}

// Smallest n with service_level(n) >= target; 0 for no traffic.
inline int required_agents(double a, double aht_seconds, const SlaSpec& sla) {
  if (a < 0) throw InputError("offered load must be non-negative");
  if (a == 0.0) return 0;
  int n = static_cast<int>(std::floor(a)) + 1;
  while (service_level(n, a, aht_seconds, sla.threshold_seconds) < sla.target) {
    if (n == std::numeric_limits<int>::max()) throw InputError("service level unreachable");
    ++n;
  }
  return n;
}

// Cell-wise required_agents over a days x intervals volume grid.
inline RequirementMatrix requirements_from_volumes(const Grid<double>& volumes, double aht_seconds,
                                                   const SlaSpec& sla, double interval_seconds) {
  Grid<int> req(volumes.rows(), volumes.cols(), 0);
  for (std::size_t d = 0; d < volumes.rows(); ++d) {
    for (std::size_t t = 0; t < volumes.cols(); ++t) {
      const double load = offered_load({volumes(d, t), interval_seconds, aht_seconds});
      req(d, t) = required_agents(load, aht_seconds, sla);
    }
  }
  return RequirementMatrix(std::move(req));
}

}  // namespace shiftsched::erlang
