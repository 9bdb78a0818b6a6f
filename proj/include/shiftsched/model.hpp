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

// Solver-agnostic integer model: bounded integer variables, linear
// constraints, and an objective that is a sum of squared linear expressions
// plus an optional linear part.

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "shiftsched/core.hpp"

namespace shiftsched {

using VarId = std::size_t;

struct Term {
  VarId var = 0;
  std::int64_t coef = 0;
  bool operator==(const Term&) const = default;
};

// Σ coef·x + constant.
struct LinearExpr {
  std::vector<Term> terms;
  std::int64_t constant = 0;

  LinearExpr& add(VarId v, std::int64_t c) {
    terms.push_back({v, c});
    return *this;
  }
};

enum class Relation { kEq, kLe, kGe };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::kEq: return "=";
    case Relation::kLe: return "<=";
    case Relation::kGe: return ">=";
  }
  return "?";
}

struct LinearConstraint {
  std::vector<Term> terms;
  Relation relation = Relation::kEq;
  std::int64_t rhs = 0;
  std::string name;
};

struct QuadraticObjective {
  std::vector<LinearExpr> squared_terms;
  LinearExpr linear_terms;
};

struct Variable {
  std::string name;
  std::int64_t lower = 0;
  std::int64_t upper = 1;
};

class IntegerModel {
 public:
  VarId add_variable(std::string name, std::int64_t lower, std::int64_t upper) {
    if (lower > upper) throw InputError("variable " + name + ": lower bound exceeds upper bound");
    variables_.push_back({std::move(name), lower, upper});
    return variables_.size() - 1;
  }

  void add_constraint(LinearConstraint c) {
    if (c.terms.empty()) throw InputError("constraint " + c.name + " has no terms");
    check_terms(c.terms);
    constraints_.push_back(std::move(c));
  }

  void add_squared_term(LinearExpr e) {
    check_terms(e.terms);
    objective_.squared_terms.push_back(std::move(e));
  }

  void add_linear_term(VarId v, std::int64_t coef) {
    check_terms({{v, coef}});
    objective_.linear_terms.add(v, coef);
  }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const QuadraticObjective& objective() const { return objective_; }
  std::size_t variable_count() const { return variables_.size(); }

 private:
  void check_terms(const std::vector<Term>& terms) const {
    for (const Term& t : terms) {
      if (t.var >= variables_.size()) throw InputError("term references unknown variable");
    }
  }

  std::vector<Variable> variables_;
  std::vector<LinearConstraint> constraints_;
  QuadraticObjective objective_;
};

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kTimeoutNoSolution };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "OPTIMAL";
    case SolveStatus::kFeasible: return "FEASIBLE";
    case SolveStatus::kInfeasible: return "INFEASIBLE";
    case SolveStatus::kTimeoutNoSolution: return "TIMEOUT_NO_SOLUTION";
  }
  return "?";
}

struct Solution {
  std::vector<std::int64_t> values;  // indexed by VarId
  std::int64_t objective_value = 0;
  SolveStatus status = SolveStatus::kInfeasible;
};

// Budget for a solve. When move_cap is set it replaces the wall clock, which
// makes the search bit-reproducible for a fixed seed.
struct SolveLimits {
  double time_budget_seconds = 10.0;
  std::uint64_t seed = 0;
  std::uint64_t max_exact_nodes = 5'000'000;
  std::optional<std::uint64_t> move_cap;

  void check() const {
    if (!(time_budget_seconds > 0.0)) throw InputError("time budget must be positive");
    if (max_exact_nodes == 0) throw InputError("max_exact_nodes must be positive");
  }
};

inline std::int64_t evaluate_expr(const LinearExpr& e, const std::vector<std::int64_t>& values) {
  std::int64_t v = e.constant;
  for (const Term& t : e.terms) {
    if (t.var >= values.size()) throw InputError("missing value for variable " + std::to_string(t.var));
    v += t.coef * values[t.var];
  }
  return v;
}

// Σ expr² + linear part; squares accumulate in 128-bit to rule out overflow.
inline std::int64_t evaluate_objective(const IntegerModel& model, const std::vector<std::int64_t>& values) {
  if (values.size() != model.variable_count()) {
    throw InputError("assignment has " + std::to_string(values.size()) + " values for " +
                     std::to_string(model.variable_count()) + " variables");
  }
  __int128 sum = evaluate_expr(model.objective().linear_terms, values);
  for (const LinearExpr& e : model.objective().squared_terms) {
    const __int128 v = evaluate_expr(e, values);
    sum += v * v;
  }
  if (sum > INT64_MAX || sum < INT64_MIN) throw InputError("objective overflows 64 bits");
  return static_cast<std::int64_t>(sum);
}

inline std::vector<std::string> check_feasible(const IntegerModel& model,
                                               const std::vector<std::int64_t>& values) {
  std::vector<std::string> out;
  if (values.size() != model.variable_count()) {
    out.push_back("assignment size mismatch");
    return out;
  }
  const auto& vars = model.variables();
  for (VarId i = 0; i < vars.size(); ++i) {
    if (values[i] < vars[i].lower || values[i] > vars[i].upper) {
      out.push_back("bound violation: " + vars[i].name + " = " + std::to_string(values[i]) +
                    " not in [" + std::to_string(vars[i].lower) + ", " +
                    std::to_string(vars[i].upper) + "]");
    }
  }
  for (const LinearConstraint& c : model.constraints()) {
    std::int64_t lhs = 0;
    for (const Term& t : c.terms) lhs += t.coef * values[t.var];
    const bool ok = c.relation == Relation::kEq   ? lhs == c.rhs
                    : c.relation == Relation::kLe ? lhs <= c.rhs
                                                  : lhs >= c.rhs;
    if (!ok) {
      out.push_back("constraint " + (c.name.empty() ? std::string("<unnamed>") : c.name) + ": " +
                    std::to_string(lhs) + " " + to_string(c.relation) + " " + std::to_string(c.rhs) +
                    " violated");
    }
  }
  return out;
}

// Text dump: `name lo hi` per variable, `lhs rel rhs` per constraint.
inline void dump_model(const IntegerModel& model, std::ostream& os) {
  const auto& vars = model.variables();
  for (const Variable& v : vars) os << v.name << ' ' << v.lower << ' ' << v.upper << '\n';
  for (const LinearConstraint& c : model.constraints()) {
    bool first = true;
    for (const Term& t : c.terms) {
      if (!first) os << (t.coef < 0 ? " - " : " + ");
      else if (t.coef < 0) os << '-';
      const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
      if (mag != 1) os << mag << '*';
      os << vars[t.var].name;
      first = false;
    }
    os << ' ' << to_string(c.relation) << ' ' << c.rhs << '\n';
  }
}

inline std::string dump_model(const IntegerModel& model) {
  std::ostringstream os;
  dump_model(model, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Variable counting
// ---------------------------------------------------------------------------

enum class Mode { kSingle, kMulti };

inline const char* to_string(Mode m) { return m == Mode::kSingle ? "single" : "multi"; }

struct ModelSize {
  std::int64_t agents = 0;
  std::int64_t days = 0;
  std::int64_t shifts = 0;
  std::int64_t intervals = 0;
  std::optional<std::int64_t> assigned_pairs;  // agent-day pairs from the day phase
};

// Single: |A||D||S| assignment binaries + an under/over pair per (d, t).
// Multi: |A||D| day binaries + |D| day slots, then pairs·|S| shift binaries
// + the same 2|D||T| deviation pair.
inline std::int64_t count_variables(const ModelSize& c, Mode mode) {
  if (c.agents < 0 || c.days < 0 || c.shifts < 0 || c.intervals < 0) {
    throw InputError("counts must be non-negative");
  }
  const std::int64_t deviation = 2 * c.days * c.intervals;
  if (mode == Mode::kSingle) return c.agents * c.days * c.shifts + deviation;
  if (!c.assigned_pairs) throw InputError("multi-phase count needs assigned_pairs");
  return c.agents * c.days + c.days + *c.assigned_pairs * c.shifts + deviation;
}

}  // namespace shiftsched
