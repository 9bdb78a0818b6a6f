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

#include <cmath>
#include <limits>
#include <numeric>

#include "shiftsched/generators.hpp"
#include "shiftsched/penalty_tuner.hpp"

namespace shiftsched {
namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(Distributions, Normalization) {
  const auto l = day_distribution({5, 5, 5, 5, 5, 0, 0});
  for (int d = 0; d < 5; ++d) EXPECT_DOUBLE_EQ(l[d], 0.2);
  EXPECT_DOUBLE_EQ(l[5], 0.0);
  EXPECT_EQ(day_distribution({10}), std::vector<double>{1.0});
  for (double x : day_distribution(std::vector<int>(7, 3))) EXPECT_DOUBLE_EQ(x, 1.0 / 7.0);

  const auto a = target_distribution({225, 225, 225, 225, 225, 110, 110});
  EXPECT_DOUBLE_EQ(a[0], 225.0 / 1345.0);
  EXPECT_DOUBLE_EQ(a[6], 110.0 / 1345.0);
  EXPECT_NEAR(sum(a), 1.0, 1e-9);
  EXPECT_EQ(target_distribution({4}), std::vector<double>{1.0});
  EXPECT_THROW(day_distribution({0, 0, 0}), InputError);
  EXPECT_THROW(target_distribution({1, -1}), InputError);
}

TEST(KlDivergence, HandValues) {
  EXPECT_DOUBLE_EQ(kl_divergence({{0.3, 0.7}, {0.3, 0.7}, 0.0}), 0.0);
  const double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  EXPECT_NEAR(kl_divergence({{0.5, 0.5}, {0.25, 0.75}, 0.0}), expected, 1e-12);
  EXPECT_NEAR(kl_divergence({{0.5, 0.5}, {0.25, 0.75}, 0.0}), 0.14384, 1e-5);
  EXPECT_TRUE(std::isinf(kl_divergence({{1.0, 0.0}, {0.0, 1.0}, 0.0})));
  EXPECT_TRUE(std::isfinite(kl_divergence({{1.0, 0.0}, {0.0, 1.0}, 1e-9})));
  EXPECT_THROW(kl_divergence({{0.5, 0.6}, {0.5, 0.5}, 0.0}), InputError);
  EXPECT_THROW(kl_divergence({{1.0}, {0.5, 0.5}, 0.0}), InputError);
}

TEST(KlDivergence, GibbsInequality) {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.index(9);
    std::vector<int> p(n), q(n);
    for (auto& x : p) x = static_cast<int>(rng.index(20));
    for (auto& x : q) x = 1 + static_cast<int>(rng.index(20));
    if (std::accumulate(p.begin(), p.end(), 0) == 0) p[0] = 1;
    const double kl = kl_divergence({day_distribution(p), target_distribution(q), 0.0});
    EXPECT_GE(kl, -1e-12);
  }
}

TEST(Sweep, PatienceAndArgmin) {
  const std::vector<double> kls{0.9, 0.3, 0.5, 0.7, 0.1};
  int calls = 0;
  const SweepTrace t = sweep_penalty(
      [&](int k) {
        ++calls;
        return SweepPoint{k, kls[k], {}};
      },
      StopConfig{2, 50, 1e-9});
  EXPECT_EQ(calls, 4);
  EXPECT_EQ(t.points.size(), 4u);
  EXPECT_EQ(t.best_k, 1);
  for (std::size_t i = 0; i < t.points.size(); ++i) EXPECT_EQ(t.points[i].k, static_cast<int>(i));
}

TEST(Sweep, FlatKeepsZeroAndKmaxCaps) {
  const SweepTrace flat = sweep_penalty([](int k) { return SweepPoint{k, 0.25, {}}; }, StopConfig{});
  EXPECT_EQ(flat.best_k, 0);
  EXPECT_EQ(flat.points.size(), 3u);
  const SweepTrace dec = sweep_penalty([](int k) { return SweepPoint{k, 1.0 / (k + 1), {}}; }, StopConfig{2, 4, 0});
  EXPECT_EQ(dec.points.size(), 5u);
  EXPECT_EQ(dec.best_k, 4);
  EXPECT_THROW(sweep_penalty([](int k) { return SweepPoint{k, 0, {}}; }, StopConfig{0, 4, 0}), InputError);
}

TEST(PerKLimits, EqualSlicesAndSeedOffset) {
  SolveLimits total;
  total.time_budget_seconds = 51.0;
  total.move_cap = 5100;
  total.seed = 7;
  const SolveLimits l = per_k_limits(total, StopConfig{}, 3);
  EXPECT_DOUBLE_EQ(l.time_budget_seconds, 1.0);
  EXPECT_EQ(*l.move_cap, 100u);
  EXPECT_EQ(l.seed, 10u);
}

TEST(TunePenalty, PeakWeekFindsBalancingK) {
  const Scenario sc = gen_peak_scenario(PeakPresetSpec{});
  SolveLimits limits;
  limits.move_cap = 51u * 20000u;
  limits.seed = 42;
  const TuneResult r = tune_penalty(sc, limits);
  const SweepTrace& t = r.trace;
  ASSERT_GE(t.points.size(), 2u);
  const SweepPoint& k0 = t.points[0];
  EXPECT_EQ(*std::min_element(k0.day_coverage.begin(), k0.day_coverage.end()), 0);
  EXPECT_LT(t.best().kl, k0.kl);
  EXPECT_GT(*std::min_element(t.best().day_coverage.begin(), t.best().day_coverage.end()), 0);
  EXPECT_GE(t.best_k, 1);
  EXPECT_LE(t.best_k, 3);
  EXPECT_EQ(r.best.day_coverage, t.best().day_coverage);
  for (const SweepPoint& p : t.points) EXPECT_GE(p.kl, t.best().kl);

  const TuneResult again = tune_penalty(sc, limits);
  EXPECT_EQ(again.trace, t);
}

TEST(TunePenalty, FlatDemandStaysAtZero) {
  const std::vector<int> flat(7, 10);
  SolveLimits limits;
  limits.move_cap = 51u * 2000u;
  // 7 agents with 5 days each covers 5 of 7 per day on average; every K sees
  // the same best balance, so the tie goes to K = 0.
  const TuneResult r = tune_penalty(flat, 7, build_week_partition(7), limits);
  EXPECT_EQ(r.trace.best_k, 0);
}

TEST(TunePenalty, RequiresAgents) {
  EXPECT_THROW(tune_penalty({1, 1, 1, 1, 1, 1, 1}, 0, build_week_partition(7), SolveLimits{}), InputError);
}

}  // namespace
}  // namespace shiftsched
