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

// Reporting metrics. These are never solver objectives.
//
//   DVDI = Σ_d |R_D(d) - P_D(d)|
//   IVDI = Σ_d Σ_t |R_DT(d,t) - P_DT(d,t)|

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "shiftsched/core.hpp"
#include "shiftsched/model.hpp"
#include "shiftsched/penalty_tuner.hpp"

namespace shiftsched {

inline std::int64_t dvdi(const std::vector<int>& required, const std::vector<int>& assigned) {
  if (required.size() != assigned.size()) throw InputError("dvdi: length mismatch");
  std::int64_t sum = 0;
  for (std::size_t d = 0; d < required.size(); ++d) sum += std::abs(required[d] - assigned[d]);
  return sum;
}

inline std::int64_t ivdi(const Grid<int>& required, const Grid<int>& assigned) {
  if (required.rows() != assigned.rows() || required.cols() != assigned.cols()) {
    throw InputError("ivdi: dimension mismatch");
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < required.data().size(); ++i) {
    sum += std::abs(required.data()[i] - assigned.data()[i]);
  }
  return sum;
}

struct RunInfo {
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  SolveStatus status = SolveStatus::kFeasible;
  std::uint64_t moves = 0;
};

struct SolveReport {
  Mode mode = Mode::kMulti;
  std::int64_t variable_count = 0;
  std::int64_t objective_value = 0;  // Σ_d Σ_t U_DT², recomputed from the schedule
  std::int64_t dvdi = 0;
  std::int64_t ivdi = 0;
  std::optional<double> kl_day_distribution;  // empty when a distribution is undefined
  std::vector<int> day_coverage;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t moves = 0;
  SolveStatus status = SolveStatus::kFeasible;

  bool operator==(const SolveReport&) const = default;
};

inline std::int64_t variable_count_for(const Scenario& sc, std::size_t assigned_pairs, Mode mode) {
  ModelSize size{sc.agent_count, sc.day_count(), static_cast<std::int64_t>(sc.shift_catalog.size()),
                 sc.intervals_per_day, static_cast<std::int64_t>(assigned_pairs)};
  return count_variables(size, mode);
}

// Everything is recomputed from the scenario and schedule; refuses
// (ValidationError) when the schedule breaks the scheduling rules.
inline SolveReport build_report(const Scenario& sc, const Schedule& sched, Mode mode, const RunInfo& run,
                                double epsilon = 1e-9) {
  auto violations = schedule_violations(sched, sc.shift_catalog, sc.agent_count, sc.day_count());
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const CoverageProfile cov =
      coverage_from_schedule(sched, sc.shift_catalog, {sc.agent_count, sc.day_count(), sc.intervals_per_day});
  const DeviationProfile dev = deviation_profiles(sc.requirements, cov);

  SolveReport r;
  r.mode = mode;
  r.variable_count = variable_count_for(sc, sched.size(), mode);
  r.objective_value = interval_squared_deviation(dev);
  r.dvdi = dvdi(sc.requirements.per_day(), cov.per_day);
  r.ivdi = ivdi(sc.requirements.per_interval(), cov.per_interval);
  try {
    r.kl_day_distribution =
        kl_divergence({day_distribution(cov.per_day), target_distribution(sc.requirements.per_day()), epsilon});
  } catch (const InputError&) {
    r.kl_day_distribution.reset();
  }
  r.day_coverage = cov.per_day;
  r.runtime_seconds = run.runtime_seconds;
  r.seed = run.seed;
  r.moves = run.moves;
  r.status = run.status;
  return r;
}

// Per-mode means over a batch of seeded runs.
struct ModeSummary {
  std::vector<SolveReport> runs;
  double mean_variable_count = 0.0;
  double mean_objective = 0.0;
  double mean_dvdi = 0.0;
  double mean_ivdi = 0.0;
  double mean_runtime_seconds = 0.0;
};

struct Comparison {
  ModeSummary single;
  ModeSummary multi;

  // multi minus single
  double delta_variable_count() const { return multi.mean_variable_count - single.mean_variable_count; }
  double delta_objective() const { return multi.mean_objective - single.mean_objective; }
  double delta_dvdi() const { return multi.mean_dvdi - single.mean_dvdi; }
  double delta_ivdi() const { return multi.mean_ivdi - single.mean_ivdi; }
};

inline ModeSummary summarize(std::vector<SolveReport> runs) {
  ModeSummary s;
  s.runs = std::move(runs);
  if (s.runs.empty()) return s;
  for (const SolveReport& r : s.runs) {
    s.mean_variable_count += static_cast<double>(r.variable_count);
    s.mean_objective += static_cast<double>(r.objective_value);
    s.mean_dvdi += static_cast<double>(r.dvdi);
    s.mean_ivdi += static_cast<double>(r.ivdi);
    s.mean_runtime_seconds += r.runtime_seconds;
  }
  const double n = static_cast<double>(s.runs.size());
  s.mean_variable_count /= n;
  s.mean_objective /= n;
  s.mean_dvdi /= n;
  s.mean_ivdi /= n;
  s.mean_runtime_seconds /= n;
  return s;
}

inline Comparison compare_runs(std::vector<SolveReport> single, std::vector<SolveReport> multi) {
  return {summarize(std::move(single)), summarize(std::move(multi))};
}

}  // namespace shiftsched
