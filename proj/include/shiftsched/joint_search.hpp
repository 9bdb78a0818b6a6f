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

// Local search for the single-phase formulation, where days and shifts are
// chosen jointly. State is one shift index (or off) per agent-day. Moves keep
// five working days per agent-week: change the shift on a working day, or
// move a working day onto an off day of the same week with any shift.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "shiftsched/core.hpp"
#include "shiftsched/count_search.hpp"
#include "shiftsched/search_support.hpp"

namespace shiftsched {

struct JointProblem {
  int agents = 0;
  int days = 0;
  ShiftCatalog catalog;
  Grid<int> requirements;          // R_DT
  const CostMatrix* cost = nullptr;  // optional linear term
};

struct JointSolution {
  Schedule schedule;
  std::int64_t objective = 0;
  SolveStatus status = SolveStatus::kFeasible;
  std::uint64_t moves = 0;
  std::vector<std::int64_t> trace;
};

namespace detail {

class JointLocalSearch {
 public:
  static constexpr int kOff = -1;

  JointLocalSearch(const JointProblem& p, const SolveLimits& limits, const SearchOptions& opts)
      : p_(p), budget_(limits), rng_(limits.seed), opts_(opts),
        intervals_(static_cast<int>(p.requirements.cols())),
        shifts_(static_cast<int>(p.catalog.size())),
        weeks_(p.days / kDaysPerWeek),
        state_(static_cast<std::size_t>(p.agents) * p.days, kOff),
        load_(p.days, intervals_, 0) {}

  JointSolution run() {
    for (int w = 0; w < weeks_; ++w)
      for (int a = 0; a < p_.agents; ++a) greedy(a, w);
    total_ = full_objective();
    trace_.push_back(total_);

    for (int w = 0; w < weeks_; ++w) descend_week(w, true);

    int stagnant = 0;
    if (p_.agents > 0 && shifts_ > 0) {
      while (!budget_.exhausted() && stagnant < opts_.max_stagnant_kicks) {
        const int w = static_cast<int>(rng_.index(weeks_));
        const int a = static_cast<int>(rng_.index(p_.agents));
        const auto saved_state = state_;
        const auto saved_load = load_;
        const std::int64_t saved_total = total_;

        randomize(a, w);
        descend_week(w, false);

        if (total_ < saved_total) {
          stagnant = 0;
          trace_.push_back(total_);
        } else if (total_ == saved_total) {
          ++stagnant;
        } else {
          state_ = saved_state;
          load_ = saved_load;
          total_ = saved_total;
          ++stagnant;
        }
      }
    }

    JointSolution sol;
    std::vector<Assignment> items;
    for (int a = 0; a < p_.agents; ++a)
      for (int d = 0; d < p_.days; ++d)
        if (at(a, d) != kOff) items.push_back({a, d, at(a, d)});
    sol.schedule = Schedule(std::move(items));
    sol.objective = total_;
    sol.status = total_ == 0 ? SolveStatus::kOptimal : SolveStatus::kFeasible;
    sol.moves = budget_.used();
    sol.trace = std::move(trace_);
    return sol;
  }

 private:
  int& at(int a, int d) { return state_[static_cast<std::size_t>(a) * p_.days + d]; }
  int at(int a, int d) const { return state_[static_cast<std::size_t>(a) * p_.days + d]; }

  static std::int64_t sq(std::int64_t x) { return x * x; }

  std::int64_t cell_cost(int d, int t, int load) const {
    return sq(static_cast<std::int64_t>(p_.requirements(d, t)) - load);
  }

  std::int64_t cost_of(int a, int d, int s) const {
    return (p_.cost && s != kOff) ? (*p_.cost)(a, d, s) : 0;
  }

  std::int64_t full_objective() const {
    std::int64_t sum = 0;
    for (int d = 0; d < p_.days; ++d)
      for (int t = 0; t < intervals_; ++t) sum += cell_cost(d, t, load_(d, t));
    for (int a = 0; a < p_.agents; ++a)
      for (int d = 0; d < p_.days; ++d) sum += cost_of(a, d, at(a, d));
    return sum;
  }

  // Interval-cost change on day d when shift `from` is replaced by `to`
  // (either may be kOff).
  std::int64_t day_delta(int d, int from, int to) const {
    if (from == to) return 0;
    int lo = intervals_;
    int hi = 0;
    if (from != kOff) {
      lo = std::min(lo, p_.catalog[from].start);
      hi = std::max(hi, p_.catalog[from].end());
    }
    if (to != kOff) {
      lo = std::min(lo, p_.catalog[to].start);
      hi = std::max(hi, p_.catalog[to].end());
    }
    std::int64_t delta = 0;
    for (int t = std::max(lo, 0); t < std::min(hi, intervals_); ++t) {
      const int change = (to != kOff && p_.catalog[to].covers(t)) - (from != kOff && p_.catalog[from].covers(t));
      if (change != 0) delta += cell_cost(d, t, load_(d, t) + change) - cell_cost(d, t, load_(d, t));
    }
    return delta;
  }

  void set(int a, int d, int s) {
    const int old = at(a, d);
    if (old != kOff) {
      for (int t = p_.catalog[old].start; t < p_.catalog[old].end(); ++t) --load_(d, t);
    }
    if (s != kOff) {
      for (int t = p_.catalog[s].start; t < p_.catalog[s].end(); ++t) ++load_(d, t);
    }
    at(a, d) = s;
  }

  // Best response for one agent-week against the current loads: the best
  // shift per day is independent, then the best of the 21 patterns.
  void greedy(int a, int w) {
    const int first = w * kDaysPerWeek;
    for (int k = 0; k < kDaysPerWeek; ++k) set(a, first + k, kOff);
    if (shifts_ == 0) return;
    std::array<int, kDaysPerWeek> best_shift{};
    std::array<std::int64_t, kDaysPerWeek> best_delta{};
    for (int k = 0; k < kDaysPerWeek; ++k) {
      best_delta[k] = std::numeric_limits<std::int64_t>::max();
      for (int s = 0; s < shifts_; ++s) {
        const std::int64_t dlt = day_delta(first + k, kOff, s) + cost_of(a, first + k, s);
        if (dlt < best_delta[k]) {
          best_delta[k] = dlt;
          best_shift[k] = s;
        }
      }
    }
    const auto& patterns = week_patterns();
    std::size_t best_p = 0;
    std::int64_t best_sum = std::numeric_limits<std::int64_t>::max();
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
      std::int64_t sum = 0;
      for (int k : patterns[pi]) sum += best_delta[k];
      if (sum < best_sum) {
        best_sum = sum;
        best_p = pi;
      }
    }
    for (int k : patterns[best_p]) set(a, first + k, best_shift[k]);
  }

  void randomize(int a, int w) {
    const int first = w * kDaysPerWeek;
    std::int64_t before = 0;
    for (int k = 0; k < kDaysPerWeek; ++k) {
      before += cost_of(a, first + k, at(a, first + k));
      total_ += day_delta(first + k, at(a, first + k), kOff);
      set(a, first + k, kOff);
    }
    total_ -= before;
    const auto& pattern = week_patterns()[rng_.index(week_patterns().size())];
    for (int k : pattern) {
      const int s = static_cast<int>(rng_.index(shifts_));
      total_ += day_delta(first + k, kOff, s) + cost_of(a, first + k, s);
      set(a, first + k, s);
    }
  }

  // One pass over agent (a, w)'s neighbourhood; applies the first improving
  // move. Returns false when nothing improved or the budget ran out.
  bool improve_agent_week(int a, int w, bool record) {
    const int first = w * kDaysPerWeek;
    for (int k = 0; k < kDaysPerWeek; ++k) {
      const int d = first + k;
      const int s = at(a, d);
      if (s == kOff) continue;
      const std::int64_t leave = cost_of(a, d, s);
      for (int s2 = 0; s2 < shifts_; ++s2) {
        if (s2 == s) continue;
        if (!budget_.take()) return false;
        const std::int64_t delta = day_delta(d, s, s2) + cost_of(a, d, s2) - leave;
        if (delta < 0) {
          accept(a, d, s2, delta, record);
          return true;
        }
      }
      const std::int64_t vacate = day_delta(d, s, kOff) - leave;
      for (int k2 = 0; k2 < kDaysPerWeek; ++k2) {
        const int d2 = first + k2;
        if (at(a, d2) != kOff) continue;
        for (int s2 = 0; s2 < shifts_; ++s2) {
          if (!budget_.take()) return false;
          const std::int64_t delta = vacate + day_delta(d2, kOff, s2) + cost_of(a, d2, s2);
          if (delta < 0) {
            set(a, d, kOff);
            accept(a, d2, s2, delta, record);
            return true;
          }
        }
      }
    }
    return false;
  }

  void accept(int a, int d, int s, std::int64_t delta, bool record) {
    set(a, d, s);
    total_ += delta;
    if (record) trace_.push_back(total_);
  }

  // Sweeps every agent in week w until a full sweep finds no improvement.
  void descend_week(int w, bool record) {
    bool improved = true;
    while (improved && !budget_.exhausted()) {
      improved = false;
      for (int a = 0; a < p_.agents; ++a) {
        while (improve_agent_week(a, w, record)) improved = true;
        if (budget_.exhausted()) return;
      }
    }
  }

  const JointProblem& p_;
  MoveBudget budget_;
  Rng rng_;
  SearchOptions opts_;
  int intervals_;
  int shifts_;
  int weeks_;
  std::vector<int> state_;
  Grid<int> load_;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> trace_;
};

}  // namespace detail

inline JointSolution solve_local_search(const JointProblem& p, const SolveLimits& limits,
                                        const SearchOptions& opts = {}) {
  limits.check();
  if (p.days % kDaysPerWeek != 0) throw HorizonError("horizon not a multiple of 7");
  if (static_cast<int>(p.requirements.rows()) != p.days) throw InputError("requirement rows != days");
  if (p.catalog.empty() && p.agents > 0) {
    JointSolution none;
    none.status = SolveStatus::kInfeasible;
    return none;
  }
  return detail::JointLocalSearch(p, limits, opts).run();
}

}  // namespace shiftsched
