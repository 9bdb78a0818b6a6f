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

#include <numeric>

#include "shiftsched/generators.hpp"
#include "shiftsched/metrics.hpp"
#include "shiftsched/multi_phase.hpp"
#include "test_support.hpp"

namespace shiftsched {
namespace {

using testing::make_scenario;

TEST(Dvdi, HandValues) {
  EXPECT_EQ(dvdi({3, 4}, {3, 4}), 0);
  EXPECT_EQ(dvdi({5, 3}, {4, 4}), 2);
  EXPECT_EQ(dvdi({225, 110}, {0, 0}), 335);
  EXPECT_THROW(dvdi({1}, {1, 2}), InputError);
}

TEST(Ivdi, HandValues) {
  const auto r = Grid<int>::from_rows({{1, 1}, {2, 0}});
  EXPECT_EQ(ivdi(r, r), 0);
  EXPECT_EQ(ivdi(r, Grid<int>::from_rows({{1, 0}, {0, 0}})), 3);
  EXPECT_EQ(ivdi(r, Grid<int>(2, 2, 0)), 4);
  EXPECT_THROW(ivdi(r, Grid<int>(2, 3, 0)), InputError);
}

TEST(Metrics, InvariantUnderDayPermutation) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int days = 1 + static_cast<int>(rng.index(8));
    Grid<int> r(days, 3, 0), p(days, 3, 0);
    std::vector<int> rd(days), pd(days);
    for (int d = 0; d < days; ++d) {
      rd[d] = static_cast<int>(rng.index(10));
      pd[d] = static_cast<int>(rng.index(10));
      for (int t = 0; t < 3; ++t) {
        r(d, t) = static_cast<int>(rng.index(10));
        p(d, t) = static_cast<int>(rng.index(10));
      }
    }
    std::vector<int> perm(days);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = days - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
    Grid<int> r2(days, 3, 0), p2(days, 3, 0);
    std::vector<int> rd2(days), pd2(days);
    for (int d = 0; d < days; ++d) {
      rd2[d] = rd[perm[d]];
      pd2[d] = pd[perm[d]];
      for (int t = 0; t < 3; ++t) {
        r2(d, t) = r(perm[d], t);
        p2(d, t) = p(perm[d], t);
      }
    }
    EXPECT_EQ(dvdi(rd, pd), dvdi(rd2, pd2));
    EXPECT_EQ(ivdi(r, p), ivdi(r2, p2));
    EXPECT_EQ(dvdi(rd, pd) == 0, rd == pd);
    EXPECT_EQ(ivdi(r, p) == 0, r == p);
  }
}

TEST(BuildReport, PerfectCoverage) {
  const Scenario sc = make_scenario(
      1, {{0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 0}},
      {{1, 2}});
  const Schedule s({{0, 0, 0}, {0, 1, 0}, {0, 3, 0}, {0, 4, 0}, {0, 5, 0}});
  const SolveReport r = build_report(sc, s, Mode::kMulti, {0.5, 3, SolveStatus::kOptimal, 9});
  EXPECT_EQ(r.dvdi, 0);
  EXPECT_EQ(r.ivdi, 0);
  EXPECT_EQ(r.objective_value, 0);
  ASSERT_TRUE(r.kl_day_distribution.has_value());
  EXPECT_NEAR(*r.kl_day_distribution, 0.0, 1e-8);
  EXPECT_EQ(r.day_coverage, (std::vector<int>{1, 1, 0, 1, 1, 1, 0}));
  EXPECT_EQ(r.variable_count, 1 * 7 + 7 + 5 * 1 + 2 * 7 * 4);
  EXPECT_EQ(r.seed, 3u);
  EXPECT_EQ(r.moves, 9u);
}

TEST(BuildReport, EmptyScheduleNoAgents) {
  const Scenario sc = make_scenario(0, std::vector<std::vector<int>>(7, {2, 3}), {{0, 1}});
  const SolveReport r = build_report(sc, Schedule{}, Mode::kSingle, {});
  EXPECT_EQ(r.dvdi, 7 * 3);
  EXPECT_EQ(r.ivdi, 7 * 5);
  EXPECT_EQ(r.objective_value, 7 * 13);
  EXPECT_FALSE(r.kl_day_distribution.has_value());
  EXPECT_EQ(r.variable_count, 2 * 7 * 2);
}

TEST(BuildReport, TableScaleVariableCount) {
  PeakPresetSpec spec;
  spec.agents = 250;
  spec.weeks = 4;
  Scenario sc = gen_peak_scenario(spec);
  // The report counts on the scenario's own horizon; 30 days is the table row.
  EXPECT_EQ(variable_count_for(sc, 0, Mode::kSingle), 250 * 28 * 15 + 2 * 28 * 24);
  ModelSize table{250, 30, 15, 24, std::nullopt};
  EXPECT_EQ(count_variables(table, Mode::kSingle), 113940);
}

TEST(BuildReport, RefusesInfeasibleSchedule) {
  const Scenario sc = make_scenario(1, std::vector<std::vector<int>>(7, {1}), {{0, 1}});
  try {
    build_report(sc, Schedule({{0, 0, 0}}), Mode::kSingle, {});
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_FALSE(e.violations().empty());
  }
}

TEST(BuildReport, FieldsMatchIndependentRecomputation) {
  SyntheticSpec spec;
  spec.agents = 20;
  const Scenario sc = gen_synthetic_scenario(spec);
  SolveLimits l;
  l.move_cap = 20000;
  const MultiPhaseResult m = solve_multi_phase(sc, l);
  const SolveReport r = build_report(sc, m.schedule, Mode::kMulti, {});
  Grid<int> cov(sc.day_count(), 24, 0);
  std::vector<int> per_day(sc.day_count(), 0);
  for (const Assignment& a : m.schedule) {
    ++per_day[a.day];
    const Shift& s = sc.shift_catalog[a.shift];
    for (int t = s.start; t < s.start + s.length; ++t) ++cov(a.day, t);
  }
  std::int64_t iv = 0, sq = 0, dv = 0;
  for (int d = 0; d < sc.day_count(); ++d) {
    dv += std::abs(sc.requirements.per_day()[d] - per_day[d]);
    for (int t = 0; t < 24; ++t) {
      const int u = sc.requirements.per_interval()(d, t) - cov(d, t);
      iv += std::abs(u);
      sq += u * u;
    }
  }
  EXPECT_EQ(r.ivdi, iv);
  EXPECT_EQ(r.dvdi, dv);
  EXPECT_EQ(r.objective_value, sq);
  EXPECT_EQ(r.objective_value, m.shift.report.objective);
  EXPECT_EQ(r.day_coverage, per_day);
  EXPECT_EQ(r.variable_count, 20 * 14 + 14 + static_cast<std::int64_t>(m.schedule.size()) * 5 + 2 * 14 * 24);
}

TEST(Compare, MeansAndDeltas) {
  SolveReport a;
  a.ivdi = 10;
  a.dvdi = 4;
  SolveReport b = a;
  b.ivdi = 20;
  const Comparison same = compare_runs({a, b}, {a, b});
  EXPECT_DOUBLE_EQ(same.delta_ivdi(), 0.0);
  EXPECT_DOUBLE_EQ(same.delta_dvdi(), 0.0);
  EXPECT_DOUBLE_EQ(same.single.mean_ivdi, 15.0);

  std::vector<SolveReport> ten;
  for (int i = 0; i < 10; ++i) {
    SolveReport r;
    r.ivdi = i;
    ten.push_back(r);
  }
  const Comparison c = compare_runs(ten, {a});
  EXPECT_DOUBLE_EQ(c.single.mean_ivdi, 4.5);
  EXPECT_DOUBLE_EQ(c.delta_ivdi(), 10.0 - 4.5);
  EXPECT_EQ(summarize({}).mean_ivdi, 0.0);
}

}  // namespace
}  // namespace shiftsched
