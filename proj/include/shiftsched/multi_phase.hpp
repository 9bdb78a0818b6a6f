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

// Day allocation, then shift allocation on the agent-day pairs it selected.
// The budget is split between the two stages (20% / 80% by default).

#include <cmath>
#include <optional>
#include <utility>

#include "shiftsched/penalty_tuner.hpp"
#include "shiftsched/phases.hpp"

namespace shiftsched {

struct MultiPhaseOptions {
  double day_share = 0.20;
  int penalty_factor = 0;
  std::optional<StopConfig> tune;  // set: choose K by sweep instead
  Backend backend = Backend::kLocalSearch;
  SearchOptions search;

  void check() const {
    if (!(day_share > 0.0 && day_share < 1.0)) throw InputError("day share must be in (0,1)");
    if (penalty_factor < 0) throw InputError("penalty factor must be non-negative");
  }
};

struct MultiPhaseResult {
  Schedule schedule;
  DayPhaseResult day;
  ShiftPhaseResult shift;
  std::optional<SweepTrace> sweep;
  int penalty_factor = 0;
};

// Budget for each stage. Move caps are split by rounding the day share down.
inline std::pair<SolveLimits, SolveLimits> split_limits(const SolveLimits& total, double day_share) {
  SolveLimits day = total;
  SolveLimits shift = total;
  day.time_budget_seconds = total.time_budget_seconds * day_share;
  shift.time_budget_seconds = total.time_budget_seconds - day.time_budget_seconds;
  if (total.move_cap) {
    const auto day_moves = static_cast<std::uint64_t>(std::floor(static_cast<double>(*total.move_cap) * day_share));
    day.move_cap = day_moves;
    shift.move_cap = *total.move_cap - day_moves;
  }
  return {day, shift};
}

inline MultiPhaseResult solve_multi_phase(const Scenario& sc, const SolveLimits& limits,
                                          const MultiPhaseOptions& opts = {}) {
  limits.check();
  opts.check();
  require_valid(sc);
  const auto [day_limits, shift_limits] = split_limits(limits, opts.day_share);

  MultiPhaseResult r;
  if (opts.tune) {
    TuneResult tuned = tune_penalty(sc.requirements.per_day(), sc.agent_count,
                                    build_week_partition(sc.day_count()), day_limits, *opts.tune,
                                    opts.backend, opts.search);
    r.penalty_factor = tuned.trace.best_k;
    r.day = std::move(tuned.best);
    r.sweep = std::move(tuned.trace);
  } else {
    r.penalty_factor = opts.penalty_factor;
    r.day = solve_day_allocation(DayPhaseSpec::from(sc, opts.penalty_factor), day_limits, opts.backend,
                                 opts.search);
  }
  if (r.day.report.status == SolveStatus::kTimeoutNoSolution) {
    throw Error("day allocation returned no solution; aborting pipeline");
  }
  r.shift = solve_shift_allocation(ShiftPhaseSpec::from(sc, r.day.allocation), shift_limits, opts.backend,
                                   opts.search);
  r.schedule = r.shift.schedule;
  return r;
}

}  // namespace shiftsched
