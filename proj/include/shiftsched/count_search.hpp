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

// Count-structure solvers.
//
// Agents are interchangeable in both phases, so a phase is solved over how
// many agents take each option instead of which agent takes it: per-week
// counts over the 21 five-day patterns for day allocation, per-day counts
// over the shift catalog for shift allocation. A problem is a set of
// independent groups; each group distributes `total` units over its options,
// every option covers a set of cells, and each cell's cost is a sum of
// squared affine functions of its load.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "shiftsched/core.hpp"
#include "shiftsched/model.hpp"
#include "shiftsched/search_support.hpp"

namespace shiftsched {

// ---------------------------------------------------------------------------
// Pattern space
// ---------------------------------------------------------------------------

// A five-day working pattern within one week, as the sorted day offsets.
using DayPattern = std::array<int, kWorkDaysPerWeek>;

// The C(7,5) = 21 patterns in lexicographic order; index 0 is days 0..4.
inline const std::vector<DayPattern>& week_patterns() {
  static const std::vector<DayPattern> patterns = [] {
    std::vector<DayPattern> out;
    DayPattern p{};
    for (p[0] = 0; p[0] < kDaysPerWeek; ++p[0])
      for (p[1] = p[0] + 1; p[1] < kDaysPerWeek; ++p[1])
        for (p[2] = p[1] + 1; p[2] < kDaysPerWeek; ++p[2])
          for (p[3] = p[2] + 1; p[3] < kDaysPerWeek; ++p[3])
            for (p[4] = p[3] + 1; p[4] < kDaysPerWeek; ++p[4]) out.push_back(p);
    return out;
  }();
  return patterns;
}

inline int pattern_index(const DayPattern& p) {
  const auto& all = week_patterns();
  auto it = std::find(all.begin(), all.end(), p);
  return it == all.end() ? -1 : static_cast<int>(it - all.begin());
}

// ---------------------------------------------------------------------------
// Problem description
// ---------------------------------------------------------------------------

// (constant - slope * load)^2
struct SquaredAffine {
  std::int64_t constant = 0;
  std::int64_t slope = 1;
};

struct CountCell {
  std::vector<SquaredAffine> terms;

  std::int64_t cost(std::int64_t load) const {
    std::int64_t c = 0;
    for (const SquaredAffine& t : terms) {
      const std::int64_t u = t.constant - t.slope * load;
      c += u * u;
    }
    return c;
  }
};

struct CountGroup {
  int total = 0;
  std::vector<std::vector<int>> options;  // option -> sorted covered cell indices
  std::vector<CountCell> cells;
};

struct CountProblem {
  std::vector<CountGroup> groups;
};

// counts[g][o]: units of group g on option o.
struct CountState {
  std::vector<std::vector<int>> counts;
  bool operator==(const CountState&) const = default;
};

struct CountSolution {
  CountState state;
  std::int64_t objective = 0;
  SolveStatus status = SolveStatus::kInfeasible;
  std::uint64_t moves = 0;
  std::vector<std::int64_t> trace;  // incumbent objective after each accepted step
};

inline std::vector<std::int64_t> group_loads(const CountGroup& g, const std::vector<int>& counts) {
  std::vector<std::int64_t> load(g.cells.size(), 0);
  for (std::size_t o = 0; o < g.options.size(); ++o)
    for (int c : g.options[o]) load[c] += counts[o];
  return load;
}

inline std::int64_t group_cost(const CountGroup& g, const std::vector<std::int64_t>& load) {
  std::int64_t sum = 0;
  for (std::size_t c = 0; c < g.cells.size(); ++c) sum += g.cells[c].cost(load[c]);
  return sum;
}

inline std::int64_t count_objective(const CountProblem& p, const CountState& s) {
  std::int64_t sum = 0;
  for (std::size_t g = 0; g < p.groups.size(); ++g) {
    sum += group_cost(p.groups[g], group_loads(p.groups[g], s.counts[g]));
  }
  return sum;
}

inline std::vector<std::string> count_violations(const CountProblem& p, const CountState& s) {
  std::vector<std::string> v;
  if (s.counts.size() != p.groups.size()) {
    v.push_back("group count mismatch");
    return v;
  }
  for (std::size_t g = 0; g < p.groups.size(); ++g) {
    const auto& c = s.counts[g];
    if (c.size() != p.groups[g].options.size()) {
      v.push_back("group " + std::to_string(g) + ": option count mismatch");
      continue;
    }
    long long sum = 0;
    for (int x : c) {
      if (x < 0) v.push_back("group " + std::to_string(g) + ": negative count");
      sum += x;
    }
    if (sum != p.groups[g].total) {
      v.push_back("group " + std::to_string(g) + ": counts sum to " + std::to_string(sum) +
                  ", expected " + std::to_string(p.groups[g].total));
    }
  }
  return v;
}

// Number of ways to place n units on k options, saturating at `cap`.
inline std::uint64_t composition_count(int n, int k, std::uint64_t cap) {
  if (k == 0) return n == 0 ? 1 : 0;
  // C(n + k - 1, min(n, k - 1)), built incrementally so each step stays exact.
  const std::uint64_t top = static_cast<std::uint64_t>(n) + k - 1;
  const std::uint64_t r = std::min<std::uint64_t>(n, k - 1);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (top - r + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

namespace detail {

struct ExactGroupSearch {
  const CountGroup& group;
  std::vector<int> counts;
  std::vector<std::int64_t> load;
  std::vector<int> best;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();

  explicit ExactGroupSearch(const CountGroup& g)
      : group(g), counts(g.options.size(), 0), load(g.cells.size(), 0) {}

  // Option `o` takes between `remaining` and 0 units, most first, so the
  // first minimum found is the lexicographically largest count vector:
  // ties favour the earliest options.
  void run(std::size_t o, int remaining) {
    if (o + 1 == group.options.size()) {
      place(o, remaining);
      const std::int64_t c = group_cost(group, load);
      if (c < best_cost) {
        best_cost = c;
        best = counts;
      }
      place(o, -remaining);
      return;
    }
    for (int take = remaining; take >= 0; --take) {
      place(o, take);
      run(o + 1, remaining - take);
      place(o, -take);
    }
  }

  void place(std::size_t o, int delta) {
    counts[o] += delta;
    for (int c : group.options[o]) load[c] += delta;
  }
};

}  // namespace detail

// Exhaustive enumeration, group by group. Refuses (SizeError) when the total
// number of count vectors exceeds limits.max_exact_nodes.
inline CountSolution solve_exact(const CountProblem& p, const SolveLimits& limits) {
  limits.check();
  std::uint64_t space = 0;
  for (const CountGroup& g : p.groups) {
    space += composition_count(g.total, static_cast<int>(g.options.size()), limits.max_exact_nodes);
    if (space > limits.max_exact_nodes) {
      throw SizeError("exact search space exceeds " + std::to_string(limits.max_exact_nodes) +
                      " count vectors");
    }
  }
  CountSolution sol;
  sol.status = SolveStatus::kOptimal;
  for (const CountGroup& g : p.groups) {
    if (g.total < 0) throw InputError("negative group total");
    if (g.options.empty()) {
      if (g.total > 0) {
        sol.status = SolveStatus::kInfeasible;
        sol.state.counts.clear();
        return sol;
      }
      sol.state.counts.emplace_back();
      sol.objective += group_cost(g, std::vector<std::int64_t>(g.cells.size(), 0));
      continue;
    }
    detail::ExactGroupSearch search(g);
    search.run(0, g.total);
    sol.state.counts.push_back(search.best);
    sol.objective += search.best_cost;
    sol.moves += composition_count(g.total, static_cast<int>(g.options.size()), UINT64_MAX - 1);
  }
  sol.trace.push_back(sol.objective);
  return sol;
}

namespace detail {

class CountLocalSearch {
 public:
  CountLocalSearch(const CountProblem& p, const SolveLimits& limits, const SearchOptions& opts)
      : problem_(p), budget_(limits), rng_(limits.seed), opts_(opts) {}

  CountSolution run() {
    const std::size_t n = problem_.groups.size();
    counts_.resize(n);
    loads_.resize(n);
    costs_.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
      const CountGroup& grp = problem_.groups[g];
      if (grp.total < 0) throw InputError("negative group total");
      if (grp.options.empty() && grp.total > 0) {
        CountSolution infeasible;
        infeasible.status = SolveStatus::kInfeasible;
        return infeasible;
      }
      greedy(g);
    }
    total_ = 0;
    for (auto c : costs_) total_ += c;
    trace_.push_back(total_);

    for (std::size_t g = 0; g < n; ++g) descend(g, true);

    std::vector<std::size_t> movable;
    for (std::size_t g = 0; g < n; ++g) {
      if (problem_.groups[g].options.size() > 1 && problem_.groups[g].total > 0) movable.push_back(g);
    }
    int stagnant = 0;
    while (!movable.empty() && !budget_.exhausted() && stagnant < opts_.max_stagnant_kicks) {
      const std::size_t g = movable[rng_.index(movable.size())];
      const auto saved_counts = counts_[g];
      const auto saved_loads = loads_[g];
      const std::int64_t saved_cost = costs_[g];

      randomize(g);
      descend(g, false);

      if (costs_[g] <= saved_cost) {
        stagnant = costs_[g] < saved_cost ? 0 : stagnant + 1;
        total_ += costs_[g] - saved_cost;
        if (costs_[g] < saved_cost) trace_.push_back(total_);
      } else {
        counts_[g] = saved_counts;
        loads_[g] = saved_loads;
        costs_[g] = saved_cost;
        ++stagnant;
      }
    }

    CountSolution sol;
    sol.state.counts = counts_;
    sol.objective = total_;
    sol.status = total_ == 0 ? SolveStatus::kOptimal : SolveStatus::kFeasible;
    sol.moves = budget_.used();
    sol.trace = std::move(trace_);
    return sol;
  }

 private:
  // One unit at a time onto the option with the largest cost decrease;
  // ties go to the lowest option index.
  void greedy(std::size_t g) {
    const CountGroup& grp = problem_.groups[g];
    counts_[g].assign(grp.options.size(), 0);
    loads_[g].assign(grp.cells.size(), 0);
    for (int unit = 0; unit < grp.total; ++unit) {
      std::size_t best = 0;
      std::int64_t best_delta = std::numeric_limits<std::int64_t>::max();
      for (std::size_t o = 0; o < grp.options.size(); ++o) {
        std::int64_t delta = 0;
        for (int c : grp.options[o]) delta += grp.cells[c].cost(loads_[g][c] + 1) - grp.cells[c].cost(loads_[g][c]);
        if (delta < best_delta) {
          best_delta = delta;
          best = o;
        }
      }
      apply(g, static_cast<std::size_t>(-1), best);
    }
    costs_[g] = group_cost(grp, loads_[g]);
  }

  void randomize(std::size_t g) {
    const CountGroup& grp = problem_.groups[g];
    counts_[g].assign(grp.options.size(), 0);
    loads_[g].assign(grp.cells.size(), 0);
    for (int unit = 0; unit < grp.total; ++unit) {
      apply(g, static_cast<std::size_t>(-1), rng_.index(grp.options.size()));
    }
    costs_[g] = group_cost(grp, loads_[g]);
  }

  void apply(std::size_t g, std::size_t from, std::size_t to) {
    const CountGroup& grp = problem_.groups[g];
    if (from != static_cast<std::size_t>(-1)) {
      --counts_[g][from];
      for (int c : grp.options[from]) --loads_[g][c];
    }
    ++counts_[g][to];
    for (int c : grp.options[to]) ++loads_[g][c];
  }

  // Cost change of moving one unit from `from` to `to`. Cells covered by
  // both options keep their load.
  std::int64_t move_delta(std::size_t g, std::size_t from, std::size_t to) const {
    const CountGroup& grp = problem_.groups[g];
    const auto& a = grp.options[from];
    const auto& b = grp.options[to];
    const auto& load = loads_[g];
    std::int64_t delta = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        const int c = a[i++];
        delta += grp.cells[c].cost(load[c] - 1) - grp.cells[c].cost(load[c]);
      } else if (i == a.size() || b[j] < a[i]) {
        const int c = b[j++];
        delta += grp.cells[c].cost(load[c] + 1) - grp.cells[c].cost(load[c]);
      } else {
        ++i;
        ++j;
      }
    }
    return delta;
  }

  // First-improvement descent over single-unit moves until a full scan finds
  // nothing better or the budget runs out.
  void descend(std::size_t g, bool record) {
    const std::size_t k = problem_.groups[g].options.size();
    if (k < 2 || problem_.groups[g].total == 0) return;
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t from = 0; from < k; ++from) {
        while (counts_[g][from] > 0) {
          bool moved = false;
          for (std::size_t to = 0; to < k; ++to) {
            if (to == from) continue;
            if (!budget_.take()) return;
            const std::int64_t delta = move_delta(g, from, to);
            if (delta < 0) {
              apply(g, from, to);
              costs_[g] += delta;
              if (record) {
                total_ += delta;
                trace_.push_back(total_);
              }
              moved = improved = true;
              break;
            }
          }
          if (!moved) break;
        }
      }
    }
  }

  const CountProblem& problem_;
  MoveBudget budget_;
  Rng rng_;
  SearchOptions opts_;
  std::vector<std::vector<int>> counts_;
  std::vector<std::vector<std::int64_t>> loads_;
  std::vector<std::int64_t> costs_;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> trace_;
};

}  // namespace detail

// Greedy construction, first-improvement descent over single-unit moves, then
// restart kicks (one group re-randomized and re-descended, kept only if not
// worse). Moves preserve every group total, so the state is always feasible.
inline CountSolution solve_local_search(const CountProblem& p, const SolveLimits& limits,
                                        const SearchOptions& opts = {}) {
  limits.check();
  return detail::CountLocalSearch(p, limits, opts).run();
}

// ---------------------------------------------------------------------------
// Materialization: counts back to per-agent binaries
// ---------------------------------------------------------------------------

// counts[w][p] agents on pattern p in week w. Within each week agents are
// handed patterns in canonical order: the lowest agent index receives the
// lexicographically smallest pattern in use.
inline DayAllocation materialize_day_allocation(const CountState& s, int agent_count, int days) {
  const int weeks = days / kDaysPerWeek;
  if (days % kDaysPerWeek != 0 || static_cast<int>(s.counts.size()) != weeks) {
    throw InputError("pattern counts do not match the horizon");
  }
  const auto& patterns = week_patterns();
  DayAllocation alloc(agent_count, days);
  for (int w = 0; w < weeks; ++w) {
    const auto& c = s.counts[w];
    if (c.size() != patterns.size()) throw InputError("week needs one count per pattern");
    int agent = 0;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      if (c[p] < 0) throw InputError("negative pattern count");
      for (int k = 0; k < c[p]; ++k, ++agent) {
        if (agent >= agent_count) throw InputError("pattern counts exceed agent count");
        for (int day : patterns[p]) alloc.set(agent, w * kDaysPerWeek + day, true);
      }
    }
    if (agent != agent_count) throw InputError("pattern counts do not sum to agent count");
  }
  return alloc;
}

// counts[d][s] agents on shift s on day d; `working[d]` lists that day's
// agents. Agents in ascending order take shifts in catalog order.
inline Schedule materialize_schedule(const CountState& s, const std::vector<std::vector<int>>& working) {
  if (s.counts.size() != working.size()) throw InputError("shift counts do not match the horizon");
  std::vector<Assignment> out;
  for (std::size_t d = 0; d < working.size(); ++d) {
    auto agents = working[d];
    std::sort(agents.begin(), agents.end());
    std::size_t next = 0;
    for (std::size_t sh = 0; sh < s.counts[d].size(); ++sh) {
      if (s.counts[d][sh] < 0) throw InputError("negative shift count");
      for (int k = 0; k < s.counts[d][sh]; ++k, ++next) {
        if (next >= agents.size()) throw InputError("shift counts exceed day head-count");
        out.push_back({agents[next], static_cast<int>(d), static_cast<int>(sh)});
      }
    }
    if (next != agents.size()) throw InputError("shift counts do not sum to day head-count");
  }
  return Schedule(std::move(out));
}

inline std::vector<std::vector<int>> working_agents(const DayAllocation& alloc) {
  std::vector<std::vector<int>> out(alloc.days());
  for (int a = 0; a < alloc.agents(); ++a)
    for (int d = 0; d < alloc.days(); ++d)
      if (alloc.works(a, d)) out[d].push_back(a);
  return out;
}

inline Schedule materialize_schedule(const CountState& s, const DayAllocation& alloc) {
  return materialize_schedule(s, working_agents(alloc));
}

// Inverse of materialize_day_allocation (up to agent relabelling).
inline CountState extract_day_counts(const DayAllocation& alloc) {
  if (alloc.days() % kDaysPerWeek != 0) throw HorizonError("horizon not a multiple of 7");
  const int weeks = alloc.days() / kDaysPerWeek;
  CountState s;
  s.counts.assign(weeks, std::vector<int>(week_patterns().size(), 0));
  for (int w = 0; w < weeks; ++w) {
    for (int a = 0; a < alloc.agents(); ++a) {
      DayPattern p{};
      int n = 0;
      for (int off = 0; off < kDaysPerWeek; ++off) {
        if (alloc.works(a, w * kDaysPerWeek + off)) {
          if (n == kWorkDaysPerWeek) throw InputError("agent works more than 5 days in a week");
          p[n++] = off;
        }
      }
      if (n != kWorkDaysPerWeek) throw InputError("agent works fewer than 5 days in a week");
      ++s.counts[w][pattern_index(p)];
    }
  }
  return s;
}

// Inverse of materialize_schedule.
inline CountState extract_shift_counts(const Schedule& sched, int days, int shifts) {
  CountState s;
  s.counts.assign(days, std::vector<int>(shifts, 0));
  for (const Assignment& a : sched) {
    if (a.day < 0 || a.day >= days || a.shift < 0 || a.shift >= shifts) {
      throw InputError("assignment out of range");
    }
    ++s.counts[a.day][a.shift];
  }
  return s;
}

}  // namespace shiftsched
