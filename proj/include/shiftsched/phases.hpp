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

// The three formulations:
//
//   day allocation    min Σ_d U_D(d)² [+ V_D(d)²]   s.t. five days per agent-week
//   shift allocation  min Σ_d Σ_t U_DT(d,t)²        s.t. one shift per working
//                                                   agent-day, n_d per day
//   single phase      min Σ_d Σ_t U_DT(d,t)² [+ Σ C·B]  s.t. five days per
//                                                   agent-week, ≤ 1 shift per day
//
// with V_D(d) = K·(|A| - P_D(d)). Each phase has an explicit per-agent
// IntegerModel (used for checking and for the branch-and-bound oracle) and a
// count-structure encoding that the bundled solvers work on.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftsched/core.hpp"
#include "shiftsched/count_search.hpp"
#include "shiftsched/exact_model.hpp"
#include "shiftsched/joint_search.hpp"
#include "shiftsched/model.hpp"

namespace shiftsched {

enum class Backend { kLocalSearch, kExact };

struct PhaseReport {
  std::int64_t objective = 0;
  SolveStatus status = SolveStatus::kInfeasible;
  std::uint64_t moves = 0;
  double runtime_seconds = 0.0;
  std::vector<std::int64_t> trace;
};

// ---------------------------------------------------------------------------
// Day allocation
// ---------------------------------------------------------------------------

struct DayPhaseSpec {
  std::vector<int> requirements;  // R_D
  int agent_count = 0;
  WeekPartition weeks;
  int penalty_factor = 0;  // K; 0 drops the balance term

  static DayPhaseSpec from(const Scenario& s, int penalty_factor = 0) {
    return {s.requirements.per_day(), s.agent_count, build_week_partition(s.day_count()),
            penalty_factor};
  }

  int days() const { return static_cast<int>(requirements.size()); }

  void check() const {
    if (penalty_factor < 0) throw InputError("penalty factor must be non-negative");
    if (agent_count < 0) throw InputError("agent count must be non-negative");
    if (weeks.size() * kDaysPerWeek != requirements.size()) {
      throw HorizonError("week partition does not cover the requirement days");
    }
  }
};

// V_D(d) = K·(|A| - P_D(d)).
inline std::vector<std::int64_t> penalty_profile(int penalty_factor, int agent_count,
                                                 const std::vector<int>& day_coverage) {
  std::vector<std::int64_t> v;
  v.reserve(day_coverage.size());
  for (int p : day_coverage) v.push_back(static_cast<std::int64_t>(penalty_factor) * (agent_count - p));
  return v;
}

// Σ_d U_D(d)² + V_D(d)² for a given per-day head-count.
inline std::int64_t day_objective(const DayPhaseSpec& spec, const std::vector<int>& day_coverage) {
  std::int64_t sum = 0;
  const auto v = penalty_profile(spec.penalty_factor, spec.agent_count, day_coverage);
  for (std::size_t d = 0; d < day_coverage.size(); ++d) {
    const std::int64_t u = spec.requirements[d] - day_coverage[d];
    sum += u * u + v[d] * v[d];
  }
  return sum;
}

inline CountProblem day_count_problem(const DayPhaseSpec& spec) {
  spec.check();
  const auto& patterns = week_patterns();
  CountProblem p;
  for (const WeekRange& w : spec.weeks.weeks) {
    CountGroup g;
    g.total = spec.agent_count;
    for (const DayPattern& pat : patterns) g.options.emplace_back(pat.begin(), pat.end());
    for (int d = w.first; d <= w.last; ++d) {
      CountCell cell;
      cell.terms.push_back({spec.requirements[d], 1});
      if (spec.penalty_factor > 0) {
        const std::int64_t k = spec.penalty_factor;
        cell.terms.push_back({k * spec.agent_count, k});
      }
      g.cells.push_back(std::move(cell));
    }
    p.groups.push_back(std::move(g));
  }
  return p;
}

// B_AD(a, d) is variable a·|D| + d.
inline IntegerModel build_day_model(const DayPhaseSpec& spec) {
  spec.check();
  const int days = spec.days();
  IntegerModel m;
  for (int a = 0; a < spec.agent_count; ++a)
    for (int d = 0; d < days; ++d)
      m.add_variable("b_ad_a" + std::to_string(a) + "_d" + std::to_string(d), 0, 1);
  for (int a = 0; a < spec.agent_count; ++a) {
    for (std::size_t w = 0; w < spec.weeks.size(); ++w) {
      LinearConstraint c;
      c.name = "week_a" + std::to_string(a) + "_w" + std::to_string(w);
      for (int d = spec.weeks.weeks[w].first; d <= spec.weeks.weeks[w].last; ++d) {
        c.terms.push_back({static_cast<VarId>(a) * days + d, 1});
      }
      c.relation = Relation::kEq;
      c.rhs = kWorkDaysPerWeek;
      m.add_constraint(std::move(c));
    }
  }
  for (int d = 0; d < days; ++d) {
    LinearExpr u;
    u.constant = spec.requirements[d];
    for (int a = 0; a < spec.agent_count; ++a) u.add(static_cast<VarId>(a) * days + d, -1);
    m.add_squared_term(std::move(u));
    if (spec.penalty_factor > 0) {
      LinearExpr v;
      v.constant = static_cast<std::int64_t>(spec.penalty_factor) * spec.agent_count;
      for (int a = 0; a < spec.agent_count; ++a) {
        v.add(static_cast<VarId>(a) * days + d, -spec.penalty_factor);
      }
      m.add_squared_term(std::move(v));
    }
  }
  return m;
}

inline std::vector<std::int64_t> day_model_values(const DayAllocation& alloc) {
  std::vector<std::int64_t> v;
  v.reserve(static_cast<std::size_t>(alloc.agents()) * alloc.days());
  for (int a = 0; a < alloc.agents(); ++a)
    for (int d = 0; d < alloc.days(); ++d) v.push_back(alloc.works(a, d) ? 1 : 0);
  return v;
}

struct DayPhaseResult {
  DayAllocation allocation;
  std::vector<int> day_coverage;  // P_D = n_d
  PhaseReport report;
};

inline DayPhaseResult solve_day_allocation(const DayPhaseSpec& spec, const SolveLimits& limits,
                                           Backend backend = Backend::kLocalSearch,
                                           const SearchOptions& opts = {}) {
  limits.check();
  const Stopwatch clock;
  const CountProblem problem = day_count_problem(spec);
  const CountSolution sol =
      backend == Backend::kExact ? solve_exact(problem, limits) : solve_local_search(problem, limits, opts);
  if (sol.status == SolveStatus::kInfeasible || sol.status == SolveStatus::kTimeoutNoSolution) {
    throw Error(std::string("day allocation failed: ") + to_string(sol.status));
  }
  DayPhaseResult r;
  r.allocation = materialize_day_allocation(sol.state, spec.agent_count, spec.days());
  r.day_coverage = r.allocation.day_counts();
  r.report = {sol.objective, sol.status, sol.moves, clock.seconds(), sol.trace};
  return r;
}

// ---------------------------------------------------------------------------
// Shift allocation
// ---------------------------------------------------------------------------

struct ShiftPhaseSpec {
  RequirementMatrix requirements;
  std::vector<int> day_counts;               // n_d
  std::vector<std::pair<int, int>> pairs;    // (agent, day) with B_AD = 1
  ShiftCatalog catalog;
  int agent_count = 0;

  static ShiftPhaseSpec from(const Scenario& s, const DayAllocation& alloc) {
    return {s.requirements, alloc.day_counts(), alloc.pairs(), s.shift_catalog, s.agent_count};
  }

  int days() const { return static_cast<int>(requirements.days()); }

  void check() const {
    if (day_counts.size() != requirements.days()) throw InputError("n_d length != days");
    std::vector<int> seen(day_counts.size(), 0);
    for (const auto& [a, d] : pairs) {
      if (a < 0 || a >= agent_count || d < 0 || d >= days()) throw InputError("agent-day pair out of range");
      ++seen[d];
    }
    for (std::size_t d = 0; d < day_counts.size(); ++d) {
      if (day_counts[d] > agent_count) {
        throw InputError("day " + std::to_string(d) + ": n_d = " + std::to_string(day_counts[d]) +
                         " exceeds agent count " + std::to_string(agent_count));
      }
      if (seen[d] != day_counts[d]) throw InputError("n_d inconsistent with agent-day pairs");
    }
    for (const Shift& s : catalog.shifts()) {
      if (s.start < 0 || s.end() > static_cast<int>(requirements.intervals())) {
        throw InputError("shift exceeds day boundary");
      }
    }
  }
};

inline CountProblem shift_count_problem(const ShiftPhaseSpec& spec) {
  spec.check();
  const int intervals = static_cast<int>(spec.requirements.intervals());
  CountProblem p;
  for (int d = 0; d < spec.days(); ++d) {
    CountGroup g;
    g.total = spec.day_counts[d];
    for (const Shift& s : spec.catalog.shifts()) {
      std::vector<int> cells;
      for (int t = s.start; t < s.end(); ++t) cells.push_back(t);
      g.options.push_back(std::move(cells));
    }
    for (int t = 0; t < intervals; ++t) {
      g.cells.push_back({{{spec.requirements.per_interval()(d, t), 1}}});
    }
    p.groups.push_back(std::move(g));
  }
  return p;
}

// B_ADS(pair i, s) is variable i·|S| + s, pairs in spec order.
inline IntegerModel build_shift_model(const ShiftPhaseSpec& spec) {
  spec.check();
  const int shifts = static_cast<int>(spec.catalog.size());
  const int intervals = static_cast<int>(spec.requirements.intervals());
  IntegerModel m;
  for (const auto& [a, d] : spec.pairs)
    for (int s = 0; s < shifts; ++s)
      m.add_variable("b_ads_a" + std::to_string(a) + "_d" + std::to_string(d) + "_s" + std::to_string(s), 0, 1);

  std::vector<std::vector<std::size_t>> pairs_of_day(spec.days());
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto& [a, d] = spec.pairs[i];
    pairs_of_day[d].push_back(i);
    LinearConstraint c;
    c.name = "one_shift_a" + std::to_string(a) + "_d" + std::to_string(d);
    for (int s = 0; s < shifts; ++s) c.terms.push_back({i * shifts + s, 1});
    c.rhs = 1;
    if (!c.terms.empty()) m.add_constraint(std::move(c));
  }
  for (int d = 0; d < spec.days(); ++d) {
    LinearConstraint c;
    c.name = "headcount_d" + std::to_string(d);
    for (std::size_t i : pairs_of_day[d])
      for (int s = 0; s < shifts; ++s) c.terms.push_back({i * shifts + s, 1});
    c.rhs = spec.day_counts[d];
    if (!c.terms.empty()) m.add_constraint(std::move(c));

    for (int t = 0; t < intervals; ++t) {
      LinearExpr u;
      u.constant = spec.requirements.per_interval()(d, t);
      for (std::size_t i : pairs_of_day[d])
        for (int s = 0; s < shifts; ++s)
          if (spec.catalog.covers(s, t)) u.add(i * shifts + s, -1);
      m.add_squared_term(std::move(u));
    }
  }
  return m;
}

inline std::vector<std::int64_t> shift_model_values(const ShiftPhaseSpec& spec, const Schedule& sched) {
  const std::size_t shifts = spec.catalog.size();
  std::vector<std::int64_t> v(spec.pairs.size() * shifts, 0);
  for (const Assignment& a : sched) {
    auto it = std::find(spec.pairs.begin(), spec.pairs.end(), std::pair{a.agent, a.day});
    if (it == spec.pairs.end()) {
      throw InputError("assignment outside the agent-day pairs");
    }
    v[static_cast<std::size_t>(it - spec.pairs.begin()) * shifts + a.shift] = 1;
  }
  return v;
}

struct ShiftPhaseResult {
  Schedule schedule;
  PhaseReport report;
};

inline ShiftPhaseResult solve_shift_allocation(const ShiftPhaseSpec& spec, const SolveLimits& limits,
                                               Backend backend = Backend::kLocalSearch,
                                               const SearchOptions& opts = {}) {
  limits.check();
  const Stopwatch clock;
  const CountProblem problem = shift_count_problem(spec);
  const CountSolution sol =
      backend == Backend::kExact ? solve_exact(problem, limits) : solve_local_search(problem, limits, opts);
  if (sol.status == SolveStatus::kInfeasible) throw Error("shift allocation infeasible (empty catalog?)");

  std::vector<std::vector<int>> working(spec.days());
  for (const auto& [a, d] : spec.pairs) working[d].push_back(a);
  ShiftPhaseResult r;
  r.schedule = materialize_schedule(sol.state, working);
  r.report = {sol.objective, sol.status, sol.moves, clock.seconds(), sol.trace};
  return r;
}

// ---------------------------------------------------------------------------
// Single phase
// ---------------------------------------------------------------------------

// B_ADS(a, d, s) is variable (a·|D| + d)·|S| + s.
inline IntegerModel build_single_model(const Scenario& sc, const CostMatrix* cost = nullptr) {
  const int A = sc.agent_count;
  const int D = sc.day_count();
  const int S = static_cast<int>(sc.shift_catalog.size());
  const int T = sc.intervals_per_day;
  const auto var = [&](int a, int d, int s) { return (static_cast<VarId>(a) * D + d) * S + s; };
  IntegerModel m;
  for (int a = 0; a < A; ++a)
    for (int d = 0; d < D; ++d)
      for (int s = 0; s < S; ++s)
        m.add_variable("b_ads_a" + std::to_string(a) + "_d" + std::to_string(d) + "_s" + std::to_string(s), 0, 1);
  const WeekPartition weeks = build_week_partition(D);
  for (int a = 0; a < A; ++a) {
    for (std::size_t w = 0; w < weeks.size(); ++w) {
      LinearConstraint c;
      c.name = "week_a" + std::to_string(a) + "_w" + std::to_string(w);
      for (int d = weeks.weeks[w].first; d <= weeks.weeks[w].last; ++d)
        for (int s = 0; s < S; ++s) c.terms.push_back({var(a, d, s), 1});
      c.rhs = kWorkDaysPerWeek;
      if (!c.terms.empty()) m.add_constraint(std::move(c));
    }
    for (int d = 0; d < D; ++d) {
      LinearConstraint c;
      c.name = "one_shift_a" + std::to_string(a) + "_d" + std::to_string(d);
      for (int s = 0; s < S; ++s) c.terms.push_back({var(a, d, s), 1});
      c.relation = Relation::kLe;
      c.rhs = 1;
      if (!c.terms.empty()) m.add_constraint(std::move(c));
    }
  }
  for (int d = 0; d < D; ++d) {
    for (int t = 0; t < T; ++t) {
      LinearExpr u;
      u.constant = sc.requirements.per_interval()(d, t);
      for (int a = 0; a < A; ++a)
        for (int s = 0; s < S; ++s)
          if (sc.shift_catalog.covers(s, t)) u.add(var(a, d, s), -1);
      m.add_squared_term(std::move(u));
    }
  }
  if (cost) {
    for (int a = 0; a < A; ++a)
      for (int d = 0; d < D; ++d)
        for (int s = 0; s < S; ++s)
          if ((*cost)(a, d, s) != 0) m.add_linear_term(var(a, d, s), (*cost)(a, d, s));
  }
  return m;
}

inline std::vector<std::int64_t> single_model_values(const Scenario& sc, const Schedule& sched) {
  const std::size_t D = sc.day_count();
  const std::size_t S = sc.shift_catalog.size();
  std::vector<std::int64_t> v(static_cast<std::size_t>(sc.agent_count) * D * S, 0);
  for (const Assignment& a : sched) v[(a.agent * D + a.day) * S + a.shift] = 1;
  return v;
}

inline Schedule schedule_from_single_values(const Scenario& sc, const std::vector<std::int64_t>& values) {
  const int D = sc.day_count();
  const int S = static_cast<int>(sc.shift_catalog.size());
  std::vector<Assignment> out;
  for (int a = 0; a < sc.agent_count; ++a)
    for (int d = 0; d < D; ++d)
      for (int s = 0; s < S; ++s)
        if (values[(static_cast<std::size_t>(a) * D + d) * S + s] != 0) out.push_back({a, d, s});
  return Schedule(std::move(out));
}

// Joint agent types for one week: a pattern plus one shift per working day.
// Type index = pattern·|S|^5 + Σ_j shift_j·|S|^(4-j), canonical order.
inline CountProblem single_count_problem(const Scenario& sc) {
  const int S = static_cast<int>(sc.shift_catalog.size());
  const int T = sc.intervals_per_day;
  const WeekPartition weeks = build_week_partition(sc.day_count());
  std::int64_t per_pattern = 1;
  for (int j = 0; j < kWorkDaysPerWeek; ++j) per_pattern *= S;
  CountProblem p;
  for (const WeekRange& w : weeks.weeks) {
    CountGroup g;
    g.total = sc.agent_count;
    for (const DayPattern& pat : week_patterns()) {
      for (std::int64_t code = 0; code < per_pattern; ++code) {
        std::vector<int> cells;
        std::int64_t rest = code;
        std::array<int, kWorkDaysPerWeek> shift_of{};
        for (int j = kWorkDaysPerWeek - 1; j >= 0; --j) {
          shift_of[j] = static_cast<int>(rest % S);
          rest /= S;
        }
        for (int j = 0; j < kWorkDaysPerWeek; ++j) {
          const Shift& sh = sc.shift_catalog[shift_of[j]];
          for (int t = sh.start; t < sh.end(); ++t) cells.push_back(pat[j] * T + t);
        }
        g.options.push_back(std::move(cells));
      }
    }
    for (int k = 0; k < kDaysPerWeek; ++k)
      for (int t = 0; t < T; ++t)
        g.cells.push_back({{{sc.requirements.per_interval()(w.first + k, t), 1}}});
    p.groups.push_back(std::move(g));
  }
  return p;
}

inline Schedule materialize_single_schedule(const Scenario& sc, const CountState& s) {
  const int S = static_cast<int>(sc.shift_catalog.size());
  std::int64_t per_pattern = 1;
  for (int j = 0; j < kWorkDaysPerWeek; ++j) per_pattern *= S;
  std::vector<Assignment> out;
  for (std::size_t w = 0; w < s.counts.size(); ++w) {
    int agent = 0;
    for (std::size_t type = 0; type < s.counts[w].size(); ++type) {
      const auto& pat = week_patterns()[type / per_pattern];
      for (int k = 0; k < s.counts[w][type]; ++k, ++agent) {
        std::int64_t rest = static_cast<std::int64_t>(type % per_pattern);
        std::array<int, kWorkDaysPerWeek> shift_of{};
        for (int j = kWorkDaysPerWeek - 1; j >= 0; --j) {
          shift_of[j] = static_cast<int>(rest % S);
          rest /= S;
        }
        for (int j = 0; j < kWorkDaysPerWeek; ++j) {
          out.push_back({agent, static_cast<int>(w) * kDaysPerWeek + pat[j], shift_of[j]});
        }
      }
    }
    if (agent != sc.agent_count) throw InputError("joint type counts do not sum to agent count");
  }
  return Schedule(std::move(out));
}

struct SinglePhaseResult {
  Schedule schedule;
  PhaseReport report;
};

// Exact backend: joint type counts when there is no cost matrix (agents stay
// interchangeable), branch and bound on the per-agent model otherwise.
inline SinglePhaseResult solve_single_phase(const Scenario& sc, const SolveLimits& limits,
                                            const CostMatrix* cost = nullptr,
                                            Backend backend = Backend::kLocalSearch,
                                            const SearchOptions& opts = {}) {
  limits.check();
  require_valid(sc);
  if (cost && (cost->agents() != sc.agent_count || cost->days() != sc.day_count() ||
               cost->shifts() != static_cast<int>(sc.shift_catalog.size()))) {
    throw InputError("cost matrix dimensions do not match the scenario");
  }
  const Stopwatch clock;
  SinglePhaseResult r;
  if (backend == Backend::kExact) {
    if (cost) {
      const Solution sol = solve_exact(build_single_model(sc, cost), limits);
      if (sol.status != SolveStatus::kOptimal) throw Error("single phase infeasible");
      r.schedule = schedule_from_single_values(sc, sol.values);
      r.report = {sol.objective_value, sol.status, 0, clock.seconds(), {sol.objective_value}};
    } else {
      const CountProblem problem = single_count_problem(sc);
      const CountSolution sol = solve_exact(problem, limits);
      if (sol.status != SolveStatus::kOptimal) throw Error("single phase infeasible");
      r.schedule = materialize_single_schedule(sc, sol.state);
      r.report = {sol.objective, sol.status, sol.moves, clock.seconds(), sol.trace};
    }
    return r;
  }
  JointProblem jp{sc.agent_count, sc.day_count(), sc.shift_catalog, sc.requirements.per_interval(), cost};
  JointSolution sol = solve_local_search(jp, limits, opts);
  if (sol.status == SolveStatus::kInfeasible) throw Error("single phase infeasible (empty catalog?)");
  r.schedule = std::move(sol.schedule);
  r.report = {sol.objective, sol.status, sol.moves, clock.seconds(), std::move(sol.trace)};
  return r;
}

}  // namespace shiftsched
