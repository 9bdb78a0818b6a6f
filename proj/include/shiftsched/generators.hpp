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

// Synthetic scenarios: the peak-week preset and a seeded multi-week generator.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftsched/core.hpp"
#include "shiftsched/search_support.hpp"

namespace shiftsched {

// Office-hours intraday curve; the 1.0 plateau makes max_t R_DT the day peak.
inline std::vector<double> default_intraday_weights() {
  std::vector<double> w(24, 0.10);
  w[7] = 0.50;
  w[8] = 0.80;
  for (int h = 9; h <= 16; ++h) w[h] = 1.00;
  w[17] = 0.70;
  w[18] = 0.50;
  for (int h = 19; h <= 21; ++h) w[h] = 0.30;
  return w;
}

// 15 ten-hour shifts starting on each hour 0..14.
inline ShiftCatalog default_shift_catalog() { return ShiftCatalog::uniform(15, 0, 1, 10); }

namespace detail {

inline void check_weights(const std::vector<double>& w) {
  if (w.empty()) throw InputError("intraday weights are empty");
  bool has_one = false;
  for (double x : w) {
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("intraday weights must lie in [0,1]");
    if (x == 1.0) has_one = true;
  }
  if (!has_one) throw InputError("intraday weights need at least one 1.0 entry");
}

// ceil(peak·weight), tolerant of binary rounding (0.7·110 is 77, not 78).
inline int scaled_requirement(int peak, double weight) {
  return static_cast<int>(std::ceil(peak * weight - 1e-9));
}

}  // namespace detail

struct PeakPresetSpec {
  int agents = 70;
  int weekday_peak_requirement = 225;
  int weekend_peak_requirement = 110;
  int weeks = 1;
  std::vector<double> intraday_weights = default_intraday_weights();
  ShiftCatalog shift_catalog = default_shift_catalog();
  std::string first_day = "2024-12-16";  // a Monday
};

// Days 0-4 of each week are weekdays, 5-6 the weekend.
inline Scenario gen_peak_scenario(const PeakPresetSpec& spec) {
  detail::check_weights(spec.intraday_weights);
  if (spec.weeks < 1) throw InputError("peak preset needs at least one week");
  if (spec.agents < 0 || spec.weekday_peak_requirement < 0 || spec.weekend_peak_requirement < 0) {
    throw InputError("peak preset counts must be non-negative");
  }
  const int days = spec.weeks * kDaysPerWeek;
  const int intervals = static_cast<int>(spec.intraday_weights.size());
  Grid<int> req(days, intervals, 0);
  for (int d = 0; d < days; ++d) {
    const int peak = d % kDaysPerWeek < kWorkDaysPerWeek ? spec.weekday_peak_requirement
                                                         : spec.weekend_peak_requirement;
    for (int t = 0; t < intervals; ++t) req(d, t) = detail::scaled_requirement(peak, spec.intraday_weights[t]);
  }
  Scenario s;
  s.name = "peak-week";
  s.days = consecutive_dates(spec.first_day, days);
  s.intervals_per_day = intervals;
  s.agent_count = spec.agents;
  s.shift_catalog = spec.shift_catalog;
  s.requirements = RequirementMatrix(std::move(req));
  s.interval_seconds = 86400.0 / intervals;
  return s;
}

struct SyntheticSpec {
  int agents = 50;
  int weeks = 2;
  int shift_count = 5;
  int shift_length = 10;
  int first_shift_start = 5;
  int shift_step = 2;
  double weekday_load = 0.85;  // weekday peak as a fraction of |A|
  double weekend_load = 0.50;
  double jitter = 0.15;        // ± relative noise on each day's peak
  std::uint64_t seed = 1;
  std::vector<double> intraday_weights = default_intraday_weights();
  std::string first_day = "2024-12-16";
};

// Seeded demand: each day's peak is the weekday/weekend load times |A|,
// perturbed by up to ±jitter, shaped by the intraday weights.
inline Scenario gen_synthetic_scenario(const SyntheticSpec& spec) {
  detail::check_weights(spec.intraday_weights);
  if (spec.weeks < 1 || spec.agents < 0 || spec.shift_count < 1 || spec.shift_length < 1) {
    throw InputError("invalid synthetic scenario spec");
  }
  const int days = spec.weeks * kDaysPerWeek;
  const int intervals = static_cast<int>(spec.intraday_weights.size());
  Rng rng(spec.seed);
  Grid<int> req(days, intervals, 0);
  for (int d = 0; d < days; ++d) {
    const double base = (d % kDaysPerWeek < kWorkDaysPerWeek ? spec.weekday_load : spec.weekend_load) * spec.agents;
    const double u = static_cast<double>(rng.index(1'000'001)) / 1'000'000.0;
    const int peak = static_cast<int>(std::lround(base * (1.0 + spec.jitter * (2.0 * u - 1.0))));
    for (int t = 0; t < intervals; ++t) {
      req(d, t) = detail::scaled_requirement(std::max(peak, 0), spec.intraday_weights[t]);
    }
  }
  Scenario s;
  s.name = "synthetic-" + std::to_string(spec.agents) + "a-" + std::to_string(days) + "d-" +
           std::to_string(spec.shift_count) + "s";
  s.days = consecutive_dates(spec.first_day, days);
  s.intervals_per_day = intervals;
  s.agent_count = spec.agents;
  s.shift_catalog = ShiftCatalog::uniform(spec.shift_count, spec.first_shift_start, spec.shift_step, spec.shift_length);
  s.requirements = RequirementMatrix(std::move(req));
  s.interval_seconds = 86400.0 / intervals;
  return s;
}

}  // namespace shiftsched
