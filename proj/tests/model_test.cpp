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

#include <limits>

#include "shiftsched/exact_model.hpp"
#include "shiftsched/model.hpp"
#include "shiftsched/search_support.hpp"

namespace shiftsched {
namespace {

LinearExpr expr(std::vector<Term> terms, std::int64_t constant) { return {std::move(terms), constant}; }

TEST(EvaluateObjective, HandArithmetic) {
  IntegerModel m;
  const VarId x = m.add_variable("x", 0, 10);
  const VarId y = m.add_variable("y", -5, 5);
  m.add_squared_term(expr({{x, 1}}, -3));
  EXPECT_EQ(evaluate_objective(m, {3, 0}), 0);
  m.add_squared_term(expr({{y, 1}}, 1));
  EXPECT_EQ(evaluate_objective(m, {1, 1}), 8);

  IntegerModel lin;
  const VarId z = lin.add_variable("z", 0, 9);
  lin.add_linear_term(z, 2);
  EXPECT_EQ(evaluate_objective(lin, {5}), 10);
  EXPECT_THROW(evaluate_objective(lin, {}), InputError);
}

TEST(EvaluateObjective, WideIntermediates) {
  IntegerModel m;
  const VarId x = m.add_variable("x", 0, 4'000'000'000LL);
  m.add_squared_term(expr({{x, 1}}, 0));
  m.add_squared_term(expr({{x, -1}}, 0));
  EXPECT_EQ(evaluate_objective(m, {2'000'000'000LL}), 8'000'000'000'000'000'000LL);
  EXPECT_THROW(evaluate_objective(m, {4'000'000'000LL}), InputError);
}

TEST(CheckFeasible, ConstraintsAndBounds) {
  IntegerModel m;
  const VarId x = m.add_variable("x", 0, 5);
  const VarId y = m.add_variable("y", 0, 5);
  m.add_constraint({{{x, 1}, {y, 1}}, Relation::kEq, 5, "sum"});
  EXPECT_TRUE(check_feasible(m, {2, 3}).empty());
  const auto v = check_feasible(m, {1, 1});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("sum"), std::string::npos);
  const auto b = check_feasible(m, {-1, 6});
  ASSERT_GE(b.size(), 1u);
  EXPECT_NE(b[0].find("bound violation"), std::string::npos);
}

TEST(IntegerModel, RejectsMalformedInput) {
  IntegerModel m;
  EXPECT_THROW(m.add_variable("x", 2, 1), InputError);
  const VarId x = m.add_variable("x", 0, 1);
  EXPECT_THROW(m.add_constraint({{}, Relation::kLe, 1, "empty"}), InputError);
  EXPECT_THROW(m.add_constraint({{{x + 1, 1}}, Relation::kLe, 1, "dangling"}), InputError);
  EXPECT_THROW(m.add_squared_term(expr({{x + 3, 1}}, 0)), InputError);
}

TEST(DumpModel, LineFormat) {
  IntegerModel m;
  const VarId x = m.add_variable("x", 0, 3);
  const VarId y = m.add_variable("y", -1, 1);
  m.add_constraint({{{x, 1}, {y, -2}}, Relation::kLe, 4, "c"});
  m.add_constraint({{{y, -1}}, Relation::kGe, 0, "d"});
  EXPECT_EQ(dump_model(m), "x 0 3\ny -1 1\nx - 2*y <= 4\n-y >= 0\n");
}

TEST(CountVariables, Table) {
  EXPECT_EQ(count_variables({250, 30, 15, 24, std::nullopt}, Mode::kSingle), 113940);
  EXPECT_EQ(count_variables({0, 30, 15, 24, std::nullopt}, Mode::kSingle), 2 * 30 * 24);
  EXPECT_EQ(count_variables({0, 30, 15, 24, 0}, Mode::kMulti), 30 + 2 * 30 * 24);
  EXPECT_EQ(count_variables({2, 7, 2, 4, 10}, Mode::kMulti), 97);
  EXPECT_THROW(count_variables({2, 7, 2, 4, std::nullopt}, Mode::kMulti), InputError);
  EXPECT_THROW(count_variables({-1, 7, 2, 4, std::nullopt}, Mode::kSingle), InputError);
}

TEST(CountVariables, MultiBelowSingleAtTableScale) {
  // Every agent works 5 of 7 days over 28 days: 250·20 assigned pairs.
  const ModelSize s{250, 28, 15, 24, 250 * 20};
  EXPECT_LT(count_variables(s, Mode::kMulti), count_variables(s, Mode::kSingle));
  for (std::int64_t pairs = 0; pairs <= 250 * 20; pairs += 250) {
    ModelSize p = s;
    p.assigned_pairs = pairs;
    EXPECT_LT(count_variables(p, Mode::kMulti), count_variables(p, Mode::kSingle));
  }
}

// Brute-force oracle over the full bounded box.
struct Brute {
  const IntegerModel& m;
  std::vector<std::int64_t> vals;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  bool any = false;

  void run(std::size_t i) {
    if (i == m.variable_count()) {
      if (!check_feasible(m, vals).empty()) return;
      any = true;
      best = std::min(best, evaluate_objective(m, vals));
      return;
    }
    for (std::int64_t v = m.variables()[i].lower; v <= m.variables()[i].upper; ++v) {
      vals[i] = v;
      run(i + 1);
    }
  }
};

IntegerModel random_model(Rng& rng) {
  IntegerModel m;
  const int n = 1 + static_cast<int>(rng.index(5));
  for (int i = 0; i < n; ++i) {
    const std::int64_t lo = static_cast<std::int64_t>(rng.index(3)) - 1;
    m.add_variable("v" + std::to_string(i), lo, lo + static_cast<std::int64_t>(rng.index(4)));
  }
  const int cons = static_cast<int>(rng.index(3));
  for (int c = 0; c < cons; ++c) {
    LinearConstraint lc;
    for (int i = 0; i < n; ++i)
      if (rng.index(2)) lc.terms.push_back({static_cast<VarId>(i), static_cast<std::int64_t>(rng.index(5)) - 2});
    if (lc.terms.empty()) lc.terms.push_back({0, 1});
    lc.relation = static_cast<Relation>(rng.index(3));
    lc.rhs = static_cast<std::int64_t>(rng.index(7)) - 3;
    lc.name = "c" + std::to_string(c);
    m.add_constraint(std::move(lc));
  }
  const int sq = 1 + static_cast<int>(rng.index(4));
  for (int s = 0; s < sq; ++s) {
    LinearExpr e;
    for (int i = 0; i < n; ++i)
      if (rng.index(2)) e.add(static_cast<VarId>(i), static_cast<std::int64_t>(rng.index(5)) - 2);
    e.constant = static_cast<std::int64_t>(rng.index(9)) - 4;
    m.add_squared_term(std::move(e));
  }
  for (int i = 0; i < n; ++i)
    if (rng.index(3) == 0) m.add_linear_term(static_cast<VarId>(i), static_cast<std::int64_t>(rng.index(7)) - 3);
  return m;
}

TEST(BranchAndBound, MatchesBruteForce) {
  Rng rng(2026);
  int infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const IntegerModel m = random_model(rng);
    Brute brute{m, std::vector<std::int64_t>(m.variable_count(), 0)};
    brute.run(0);
    const Solution sol = solve_exact(m, SolveLimits{});
    if (!brute.any) {
      EXPECT_EQ(sol.status, SolveStatus::kInfeasible) << trial;
      ++infeasible;
      continue;
    }
    ASSERT_EQ(sol.status, SolveStatus::kOptimal) << trial;
    EXPECT_EQ(sol.objective_value, brute.best) << trial;
    EXPECT_TRUE(check_feasible(m, sol.values).empty());
    EXPECT_EQ(evaluate_objective(m, sol.values), sol.objective_value);
  }
  EXPECT_GT(infeasible, 0);
  EXPECT_LT(infeasible, 400);
}

TEST(BranchAndBound, NodeCapRaisesSizeError) {
  // Σ 2x = 15 has no integer solution, but bound propagation cannot see parity.
  IntegerModel m;
  for (int i = 0; i < 30; ++i) m.add_variable("x" + std::to_string(i), 0, 1);
  LinearConstraint c{{}, Relation::kEq, 15, "odd"};
  for (int i = 0; i < 30; ++i) c.terms.push_back({static_cast<VarId>(i), 2});
  m.add_constraint(c);
  SolveLimits limits;
  limits.max_exact_nodes = 1000;
  EXPECT_THROW(solve_exact(m, limits), SizeError);
}

TEST(SolveLimits, Validation) {
  SolveLimits l;
  l.time_budget_seconds = 0.0;
  EXPECT_THROW(l.check(), InputError);
  l.time_budget_seconds = 1.0;
  l.max_exact_nodes = 0;
  EXPECT_THROW(l.check(), InputError);
}

}  // namespace
}  // namespace shiftsched
