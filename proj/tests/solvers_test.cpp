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

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "shiftsched/count_search.hpp"
#include "shiftsched/joint_search.hpp"
#include "shiftsched/phases.hpp"
#include "test_support.hpp"

namespace shiftsched {
namespace {

SolveLimits capped(std::uint64_t cap, std::uint64_t seed = 0) {
  SolveLimits l;
  l.move_cap = cap;
  l.seed = seed;
  return l;
}

// All 5-of-7 subsets by bitmask, independent of week_patterns().
std::vector<int> five_day_masks() {
  std::vector<int> out;
  for (int m = 0; m < 128; ++m)
    if (__builtin_popcount(m) == 5) out.push_back(m);
  return out;
}

// Per-agent brute force of Σ_d (R_D - P_D)² over one week.
std::int64_t brute_day_optimum(const std::vector<int>& r, int agents) {
  const auto masks = five_day_masks();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> pick(agents, 0);
  while (true) {
    std::int64_t obj = 0;
    for (int d = 0; d < 7; ++d) {
      int p = 0;
      for (int a = 0; a < agents; ++a) p += (masks[pick[a]] >> d) & 1;
      obj += static_cast<std::int64_t>(r[d] - p) * (r[d] - p);
    }
    best = std::min(best, obj);
    int i = 0;
    while (i < agents && ++pick[i] == static_cast<int>(masks.size())) pick[i++] = 0;
    if (i == agents) break;
  }
  return best;
}

// Per-agent brute force of Σ_t (R_DT - P_DT)² for one day with n agents.
std::int64_t brute_shift_optimum(const std::vector<int>& r, const ShiftCatalog& cat, int n) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> pick(n, 0);
  const int S = static_cast<int>(cat.size());
  while (true) {
    std::int64_t obj = 0;
    for (std::size_t t = 0; t < r.size(); ++t) {
      int p = 0;
      for (int a = 0; a < n; ++a) p += cat[pick[a]].covers(static_cast<int>(t));
      obj += static_cast<std::int64_t>(r[t] - p) * (r[t] - p);
    }
    best = std::min(best, obj);
    int i = 0;
    while (i < n && ++pick[i] == S) pick[i++] = 0;
    if (i == n) break;
  }
  return best;
}

TEST(PatternSpace, TwentyOneLexicographic) {
  const auto& p = week_patterns();
  ASSERT_EQ(p.size(), 21u);
  EXPECT_EQ(p.front(), (DayPattern{0, 1, 2, 3, 4}));
  EXPECT_EQ(p.back(), (DayPattern{2, 3, 4, 5, 6}));
  EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
  EXPECT_EQ(std::set<DayPattern>(p.begin(), p.end()).size(), 21u);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(pattern_index(p[i]), static_cast<int>(i));
}

TEST(CompositionCount, SmallValues) {
  EXPECT_EQ(composition_count(2, 2, 100), 3u);
  EXPECT_EQ(composition_count(0, 5, 100), 1u);
  EXPECT_EQ(composition_count(4, 21, 1u << 30), 10626u);
  EXPECT_EQ(composition_count(3, 0, 100), 0u);
  EXPECT_EQ(composition_count(250, 21, 1000), 1001u);
}

TEST(ExactCount, OneAgentWeekdays) {
  const DayPhaseSpec spec{{1, 1, 1, 1, 1, 0, 0}, 1, build_week_partition(7), 0};
  const CountSolution sol = solve_exact(day_count_problem(spec), SolveLimits{});
  EXPECT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_EQ(sol.objective, 0);
  const DayAllocation a = materialize_day_allocation(sol.state, 1, 7);
  EXPECT_EQ(a.day_counts(), (std::vector<int>{1, 1, 1, 1, 1, 0, 0}));
}

TEST(ExactCount, ZeroAgents) {
  const DayPhaseSpec spec{{3, 1, 0, 0, 2, 0, 1}, 0, build_week_partition(7), 0};
  const CountSolution sol = solve_exact(day_count_problem(spec), SolveLimits{});
  EXPECT_EQ(sol.objective, 9 + 1 + 4 + 1);
  EXPECT_TRUE(materialize_day_allocation(sol.state, 0, 7).pairs().empty());
}

TEST(ExactCount, TwoShiftsTileTheDay) {
  Scenario sc = testing::make_scenario(2, {{1, 1, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0},
                                           {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}},
                                       {{0, 2}, {2, 2}});
  ShiftPhaseSpec spec{sc.requirements, {2, 0, 0, 0, 0, 0, 0}, {{0, 0}, {1, 0}}, sc.shift_catalog, 2};
  const CountSolution sol = solve_exact(shift_count_problem(spec), SolveLimits{});
  EXPECT_EQ(sol.objective, 0);
  EXPECT_EQ(sol.state.counts[0], (std::vector<int>{1, 1}));
  const Schedule s = materialize_schedule(sol.state, {{0, 1}, {}, {}, {}, {}, {}, {}});
  EXPECT_EQ(s, Schedule({{0, 0, 0}, {1, 0, 1}}));
}

TEST(ExactCount, RefusesLargeSpace) {
  const DayPhaseSpec spec{std::vector<int>(7, 100), 250, build_week_partition(7), 0};
  SolveLimits l;
  l.max_exact_nodes = 1000;
  EXPECT_THROW(solve_exact(day_count_problem(spec), l), SizeError);
}

TEST(ExactCount, EmptyOptionsInfeasible) {
  CountProblem p;
  p.groups.push_back({2, {}, {}});
  EXPECT_EQ(solve_exact(p, SolveLimits{}).status, SolveStatus::kInfeasible);
}

TEST(ExactCount, MatchesPerAgentBruteForce) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int agents = static_cast<int>(rng.index(4));
    std::vector<int> r(7);
    for (int& x : r) x = static_cast<int>(rng.index(6));
    const DayPhaseSpec spec{r, agents, build_week_partition(7), 0};
    EXPECT_EQ(solve_exact(day_count_problem(spec), SolveLimits{}).objective, brute_day_optimum(r, agents));
  }
  for (int trial = 0; trial < 60; ++trial) {
    Scenario sc = testing::random_micro_scenario(rng, trial);
    const int n = static_cast<int>(rng.index(5));
    std::vector<int> counts(7, 0);
    counts[0] = std::min(n, sc.agent_count);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < counts[0]; ++a) pairs.push_back({a, 0});
    const ShiftPhaseSpec spec{sc.requirements, counts, pairs, sc.shift_catalog, sc.agent_count};
    const CountSolution sol = solve_exact(shift_count_problem(spec), SolveLimits{});
    std::int64_t rest = 0;
    for (int d = 1; d < 7; ++d)
      for (int v : sc.requirements.per_interval().row(d)) rest += static_cast<std::int64_t>(v) * v;
    const auto row = sc.requirements.per_interval().row(0);
    EXPECT_EQ(sol.objective, rest + brute_shift_optimum({row.begin(), row.end()}, sc.shift_catalog, counts[0]));
  }
}

TEST(LocalSearch, MatchesExactOnMicroInstances) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Scenario sc = testing::random_micro_scenario(rng, trial);
    const DayPhaseSpec ds = DayPhaseSpec::from(sc, static_cast<int>(rng.index(3)));
    const CountProblem dp = day_count_problem(ds);
    const CountSolution exact = solve_exact(dp, SolveLimits{});
    const CountSolution ls = solve_local_search(dp, capped(10000, trial));
    EXPECT_EQ(ls.objective, exact.objective) << sc.name;
    EXPECT_TRUE(count_violations(dp, ls.state).empty());
    EXPECT_EQ(count_objective(dp, ls.state), ls.objective);
    EXPECT_GE(ls.objective, exact.objective);
  }
}

TEST(LocalSearch, TraceIsMonotoneAndDeterministic) {
  const Scenario sc = gen_synthetic_scenario(SyntheticSpec{});
  const CountProblem p = day_count_problem(DayPhaseSpec::from(sc, 1));
  const CountSolution a = solve_local_search(p, capped(3000, 9));
  const CountSolution b = solve_local_search(p, capped(3000, 9));
  EXPECT_EQ(a.state, b.state);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.moves, b.moves);
  ASSERT_FALSE(a.trace.empty());
  for (std::size_t i = 1; i < a.trace.size(); ++i) EXPECT_LE(a.trace[i], a.trace[i - 1]);
  EXPECT_EQ(a.trace.back(), a.objective);
  EXPECT_LE(a.moves, 3000u);
}

TEST(LocalSearch, TinyBudgetStillFeasible) {
  const Scenario sc = gen_synthetic_scenario(SyntheticSpec{});
  const CountProblem p = day_count_problem(DayPhaseSpec::from(sc, 0));
  const CountSolution s = solve_local_search(p, capped(1));
  EXPECT_EQ(s.status, SolveStatus::kFeasible);
  EXPECT_TRUE(count_violations(p, s.state).empty());
}

TEST(Materialize, CanonicalOrder) {
  CountState two;
  two.counts = {std::vector<int>(21, 0)};
  two.counts[0][0] = 2;
  const DayAllocation a = materialize_day_allocation(two, 2, 7);
  for (int ag = 0; ag < 2; ++ag)
    for (int d = 0; d < 7; ++d) EXPECT_EQ(a.works(ag, d), d < 5);

  CountState mixed;
  mixed.counts = {std::vector<int>(21, 0)};
  mixed.counts[0][20] = 1;
  mixed.counts[0][3] = 1;
  const DayAllocation b = materialize_day_allocation(mixed, 2, 7);
  for (int d = 0; d < 7; ++d) {
    EXPECT_EQ(b.works(0, d), std::count(week_patterns()[3].begin(), week_patterns()[3].end(), d) > 0);
    EXPECT_EQ(b.works(1, d), std::count(week_patterns()[20].begin(), week_patterns()[20].end(), d) > 0);
  }

  CountState shifts;
  shifts.counts = {{1, 1}};
  EXPECT_EQ(materialize_schedule(shifts, {{7, 3}}), Schedule({{3, 0, 0}, {7, 0, 1}}));

  CountState bad = two;
  bad.counts[0][0] = 3;
  EXPECT_THROW(materialize_day_allocation(bad, 2, 7), InputError);
  EXPECT_THROW(materialize_schedule(shifts, {{3}}), InputError);
}

TEST(Materialize, RoundTripProperty) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int agents = 1 + static_cast<int>(rng.index(8));
    const int weeks = 1 + static_cast<int>(rng.index(3));
    CountState s;
    for (int w = 0; w < weeks; ++w) {
      std::vector<int> c(21, 0);
      for (int a = 0; a < agents; ++a) ++c[rng.index(21)];
      s.counts.push_back(c);
    }
    const DayAllocation alloc = materialize_day_allocation(s, agents, weeks * 7);
    EXPECT_EQ(extract_day_counts(alloc), s);

    CountState sh;
    for (int d = 0; d < weeks * 7; ++d) {
      std::vector<int> c(3, 0);
      for (std::size_t k = 0; k < working_agents(alloc)[d].size(); ++k) ++c[rng.index(3)];
      sh.counts.push_back(c);
    }
    const Schedule sched = materialize_schedule(sh, alloc);
    EXPECT_EQ(extract_shift_counts(sched, weeks * 7, 3), sh);
  }
}

// Joint per-agent search for the single phase.
TEST(JointSearch, MatchesExactOnSingleShiftMicros) {
  Rng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Scenario sc = testing::random_micro_scenario(rng, trial);
    sc.shift_catalog = ShiftCatalog({sc.shift_catalog[0]});
    const CountSolution exact = solve_exact(single_count_problem(sc), SolveLimits{});
    JointProblem jp{sc.agent_count, 7, sc.shift_catalog, sc.requirements.per_interval(), nullptr};
    const JointSolution ls = solve_local_search(jp, capped(10000, trial));
    EXPECT_EQ(ls.objective, exact.objective) << sc.name;
    EXPECT_TRUE(schedule_violations(ls.schedule, sc.shift_catalog, sc.agent_count, 7).empty());
    ++checked;
  }
  EXPECT_EQ(checked, 40);
}

TEST(JointSearch, ObjectiveMatchesModelAndIsDeterministic) {
  SyntheticSpec spec;
  spec.agents = 12;
  spec.weeks = 1;
  const Scenario sc = gen_synthetic_scenario(spec);
  CostMatrix cost(sc.agent_count, 7, static_cast<int>(sc.shift_catalog.size()), 0);
  Rng rng(4);
  for (int a = 0; a < sc.agent_count; ++a)
    for (int d = 0; d < 7; ++d)
      for (int s = 0; s < static_cast<int>(sc.shift_catalog.size()); ++s)
        cost.set(a, d, s, static_cast<std::int64_t>(rng.index(4)));
  JointProblem jp{sc.agent_count, 7, sc.shift_catalog, sc.requirements.per_interval(), &cost};
  const JointSolution a = solve_local_search(jp, capped(20000, 1));
  const JointSolution b = solve_local_search(jp, capped(20000, 1));
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_EQ(a.trace, b.trace);
  const IntegerModel m = build_single_model(sc, &cost);
  const auto values = single_model_values(sc, a.schedule);
  EXPECT_TRUE(check_feasible(m, values).empty());
  EXPECT_EQ(evaluate_objective(m, values), a.objective);
  for (std::size_t i = 1; i < a.trace.size(); ++i) EXPECT_LE(a.trace[i], a.trace[i - 1]);
}

TEST(JointSearch, CostAwareMatchesBranchAndBound) {
  // 1 agent, 1 week, 2 shifts: small enough for the per-agent model.
  Scenario sc = testing::make_scenario(1, std::vector<std::vector<int>>(7, {1, 1, 0}), {{0, 2}, {1, 2}});
  CostMatrix cost(1, 7, 2, 0);
  for (int d = 0; d < 7; ++d) cost.set(0, d, 0, d);
  SolveLimits l = capped(10000);
  const SinglePhaseResult bb = solve_single_phase(sc, l, &cost, Backend::kExact);
  const SinglePhaseResult ls = solve_single_phase(sc, l, &cost, Backend::kLocalSearch);
  EXPECT_EQ(bb.report.objective, ls.report.objective);
  EXPECT_EQ(bb.report.status, SolveStatus::kOptimal);
}

}  // namespace
}  // namespace shiftsched
