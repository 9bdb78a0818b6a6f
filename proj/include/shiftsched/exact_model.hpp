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

// Depth-first branch and bound over a generic IntegerModel. Variables are
// branched in index order, values ascending; a node is pruned when a touched
// constraint can no longer be met or when the objective lower bound (each
// squared expression minimised over its remaining interval) reaches the
// incumbent. Only for small models: this is the oracle the count-structure
// solvers are checked against.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "shiftsched/model.hpp"

namespace shiftsched {

namespace detail {

class BranchAndBound {
 public:
  BranchAndBound(const IntegerModel& m, const SolveLimits& limits)
      : model_(m), node_cap_(limits.max_exact_nodes) {
    const auto& vars = m.variables();
    const std::size_t n = vars.size();
    occ_cons_.resize(n);
    occ_sq_.resize(n);
    lin_coef_.assign(n, 0);

    const auto& cons = m.constraints();
    con_fixed_.assign(cons.size(), 0);
    con_min_.assign(cons.size(), 0);
    con_max_.assign(cons.size(), 0);
    for (std::size_t c = 0; c < cons.size(); ++c) {
      for (const Term& t : cons[c].terms) {
        occ_cons_[t.var].push_back({c, t.coef});
        con_min_[c] += lo(t.var, t.coef);
        con_max_[c] += hi(t.var, t.coef);
      }
    }

    const auto& sq = m.objective().squared_terms;
    sq_fixed_.assign(sq.size(), 0);
    sq_min_.assign(sq.size(), 0);
    sq_max_.assign(sq.size(), 0);
    sq_bound_.assign(sq.size(), 0);
    for (std::size_t e = 0; e < sq.size(); ++e) {
      sq_fixed_[e] = sq[e].constant;
      for (const Term& t : sq[e].terms) {
        occ_sq_[t.var].push_back({e, t.coef});
        sq_min_[e] += lo(t.var, t.coef);
        sq_max_[e] += hi(t.var, t.coef);
      }
      sq_bound_[e] = square_floor(e);
      bound_ += sq_bound_[e];
    }

    const auto& lin = m.objective().linear_terms;
    lin_fixed_ = lin.constant;
    for (const Term& t : lin.terms) {
      lin_coef_[t.var] += t.coef;
    }
    for (VarId v = 0; v < n; ++v) lin_min_ += lo(v, lin_coef_[v]);

    values_.assign(n, 0);
  }

  Solution run() {
    for (std::size_t c = 0; c < con_fixed_.size(); ++c) {
      if (!satisfiable(c)) return {{}, 0, SolveStatus::kInfeasible};
    }
    dfs(0);
    Solution s;
    if (!found_) {
      s.status = SolveStatus::kInfeasible;
      return s;
    }
    s.values = best_values_;
    s.objective_value = best_;
    s.status = SolveStatus::kOptimal;
    return s;
  }

 private:
  struct Occurrence {
    std::size_t index;
    std::int64_t coef;
  };

  std::int64_t lo(VarId v, std::int64_t coef) const {
    const auto& var = model_.variables()[v];
    return std::min(coef * var.lower, coef * var.upper);
  }
  std::int64_t hi(VarId v, std::int64_t coef) const {
    const auto& var = model_.variables()[v];
    return std::max(coef * var.lower, coef * var.upper);
  }

  std::int64_t square_floor(std::size_t e) const {
    const std::int64_t a = sq_fixed_[e] + sq_min_[e];
    const std::int64_t b = sq_fixed_[e] + sq_max_[e];
    if (a <= 0 && b >= 0) return 0;
    const std::int64_t m = a > 0 ? a : -b;
    return m * m;
  }

  bool satisfiable(std::size_t c) const {
    const auto& con = model_.constraints()[c];
    const std::int64_t low = con_fixed_[c] + con_min_[c];
    const std::int64_t high = con_fixed_[c] + con_max_[c];
    switch (con.relation) {
      case Relation::kEq: return low <= con.rhs && con.rhs <= high;
      case Relation::kLe: return low <= con.rhs;
      case Relation::kGe: return high >= con.rhs;
    }
    return false;
  }

  // Fixes (sign = +1) or releases (sign = -1) variable v at value x.
  void fix(VarId v, std::int64_t x, int sign) {
    for (const Occurrence& o : occ_cons_[v]) {
      con_fixed_[o.index] += sign * o.coef * x;
      con_min_[o.index] -= sign * lo(v, o.coef);
      con_max_[o.index] -= sign * hi(v, o.coef);
    }
    for (const Occurrence& o : occ_sq_[v]) {
      sq_fixed_[o.index] += sign * o.coef * x;
      sq_min_[o.index] -= sign * lo(v, o.coef);
      sq_max_[o.index] -= sign * hi(v, o.coef);
      bound_ -= sq_bound_[o.index];
      sq_bound_[o.index] = square_floor(o.index);
      bound_ += sq_bound_[o.index];
    }
    lin_fixed_ += sign * lin_coef_[v] * x;
    lin_min_ -= sign * lo(v, lin_coef_[v]);
  }

  void dfs(VarId v) {
    if (v == values_.size()) {
      const std::int64_t obj = bound_ + lin_fixed_;  // all intervals collapsed
      if (!found_ || obj < best_) {
        found_ = true;
        best_ = obj;
        best_values_ = values_;
      }
      return;
    }
    const auto& var = model_.variables()[v];
    for (std::int64_t x = var.lower; x <= var.upper; ++x) {
      if (++nodes_ > node_cap_) {
        throw SizeError("branch and bound exceeded " + std::to_string(node_cap_) + " nodes");
      }
      values_[v] = x;
      fix(v, x, +1);
      bool ok = true;
      for (const Occurrence& o : occ_cons_[v]) {
        if (!satisfiable(o.index)) {
          ok = false;
          break;
        }
      }
      if (ok && (!found_ || bound_ + lin_fixed_ + lin_min_ < best_)) dfs(v + 1);
      fix(v, x, -1);
    }
    values_[v] = 0;
  }

  const IntegerModel& model_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;

  std::vector<std::vector<Occurrence>> occ_cons_;
  std::vector<std::vector<Occurrence>> occ_sq_;
  std::vector<std::int64_t> lin_coef_;

  std::vector<std::int64_t> con_fixed_, con_min_, con_max_;
  std::vector<std::int64_t> sq_fixed_, sq_min_, sq_max_, sq_bound_;
  std::int64_t bound_ = 0;
  std::int64_t lin_fixed_ = 0;
  std::int64_t lin_min_ = 0;

  std::vector<std::int64_t> values_;
  std::vector<std::int64_t> best_values_;
  std::int64_t best_ = 0;
  bool found_ = false;
};

}  // namespace detail

// Globally optimal solution of a small model; SizeError once the node count
// passes limits.max_exact_nodes.
inline Solution solve_exact(const IntegerModel& model, const SolveLimits& limits) {
  limits.check();
  return detail::BranchAndBound(model, limits).run();
}

}  // namespace shiftsched
