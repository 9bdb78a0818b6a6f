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

// Peak-season balancing. With fewer agents than demand, plain day allocation
// piles everyone onto the heaviest days and can leave light days empty. The
// balance penalty K·(|A| - P_D(d)) counters that; K is chosen by sweeping
// K = 0, 1, 2, ... and keeping the one whose day distribution is closest, in
// KL divergence, to the demand distribution.

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "shiftsched/phases.hpp"

namespace shiftsched {

namespace detail {

template <typename T>
std::vector<double> normalize(const std::vector<T>& v, const char* what) {
  double sum = 0.0;
  for (T x : v) {
    if (x < 0) throw InputError(std::string(what) + " has a negative entry");
    sum += static_cast<double>(x);
  }
  if (!(sum > 0.0)) throw InputError(std::string(what) + " sums to zero: distribution undefined");
  std::vector<double> out;
  out.reserve(v.size());
  for (T x : v) out.push_back(static_cast<double>(x) / sum);
  return out;
}

}  // namespace detail

// λ: P_D(d) / Σ P_D.
inline std::vector<double> day_distribution(const std::vector<int>& day_coverage) {
  return detail::normalize(day_coverage, "day coverage");
}

// α: R_D(d) / Σ R_D.
inline std::vector<double> target_distribution(const std::vector<int>& day_requirements) {
  return detail::normalize(day_requirements, "day requirements");
}

struct DistributionPair {
  std::vector<double> lambda;
  std::vector<double> alpha;
  double epsilon = 1e-9;

  void check() const {
    if (lambda.size() != alpha.size()) throw InputError("distribution lengths differ");
    if (epsilon < 0) throw InputError("epsilon must be non-negative");
    for (const auto* v : {&lambda, &alpha}) {
      double s = 0.0;
      for (double x : *v) {
        if (x < 0) throw InputError("distribution has a negative entry");
        s += x;
      }
      if (std::fabs(s - 1.0) > 1e-9) throw InputError("distribution does not sum to 1");
    }
  }
};

// Σ_d λ ln(λ / (α + ε)), with 0·ln 0 = 0. Returns +infinity when λ puts mass
// where α + ε is zero.
inline double kl_divergence(const DistributionPair& p) {
  p.check();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.lambda.size(); ++i) {
    const double l = p.lambda[i];
    if (l == 0.0) continue;
    const double q = p.alpha[i] + p.epsilon;
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    sum += l * std::log(l / q);
  }
  return sum;
}

struct StopConfig {
  int patience = 2;  // non-improving K values tolerated after the best
  int k_max = 50;
  double epsilon = 1e-9;

  void check() const {
    if (patience < 1) throw InputError("patience must be at least 1");
    if (k_max < 0) throw InputError("k_max must be non-negative");
    if (epsilon < 0) throw InputError("epsilon must be non-negative");
  }
};

struct SweepPoint {
  int k = 0;
  double kl = 0.0;
  std::vector<int> day_coverage;  // P_D at this K
  bool operator==(const SweepPoint&) const = default;
};

struct SweepTrace {
  std::vector<SweepPoint> points;
  int best_k = 0;

  const SweepPoint& best() const { return points.at(static_cast<std::size_t>(best_k)); }
  bool operator==(const SweepTrace&) const = default;
};

// Sequential sweep over K = 0..k_max with `evaluate(K) -> SweepPoint`.
// Stops after `patience` consecutive K without a strictly lower KL; ties keep
// the smallest K.
template <typename Evaluate>
SweepTrace sweep_penalty(Evaluate&& evaluate, const StopConfig& stop) {
  stop.check();
  SweepTrace trace;
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int k = 0; k <= stop.k_max; ++k) {
    SweepPoint pt = evaluate(k);
    pt.k = k;
    const double kl = pt.kl;
    trace.points.push_back(std::move(pt));
    if (k == 0 || kl < best) {
      best = kl;
      trace.best_k = k;
      since_best = 0;
    } else if (++since_best >= stop.patience) {
      break;
    }
  }
  return trace;
}

struct TuneResult {
  SweepTrace trace;
  DayPhaseResult best;  // allocation at K*
};

// Each K gets an equal 1/(k_max+1) slice of the time budget and move cap, and
// seed + K.
inline SolveLimits per_k_limits(const SolveLimits& total, const StopConfig& stop, int k) {
  SolveLimits l = total;
  l.time_budget_seconds = total.time_budget_seconds / (stop.k_max + 1);
  if (total.move_cap) l.move_cap = *total.move_cap / static_cast<std::uint64_t>(stop.k_max + 1);
  l.seed = total.seed + static_cast<std::uint64_t>(k);
  return l;
}

inline TuneResult tune_penalty(const std::vector<int>& day_requirements, int agent_count,
                               const WeekPartition& weeks, const SolveLimits& limits,
                               const StopConfig& stop = {}, Backend backend = Backend::kLocalSearch,
                               const SearchOptions& opts = {}) {
  if (agent_count < 1) throw InputError("penalty tuning needs at least one agent");
  limits.check();
  stop.check();
  const std::vector<double> alpha = target_distribution(day_requirements);
  std::vector<DayPhaseResult> results;
  SweepTrace trace = sweep_penalty(
      [&](int k) {
        DayPhaseSpec spec{day_requirements, agent_count, weeks, k};
        DayPhaseResult r = solve_day_allocation(spec, per_k_limits(limits, stop, k), backend, opts);
        SweepPoint pt;
        pt.kl = kl_divergence({day_distribution(r.day_coverage), alpha, stop.epsilon});
        pt.day_coverage = r.day_coverage;
        results.push_back(std::move(r));
        return pt;
      },
      stop);
  TuneResult out{std::move(trace), {}};
  out.best = std::move(results[static_cast<std::size_t>(out.trace.best_k)]);
  return out;
}

inline TuneResult tune_penalty(const Scenario& sc, const SolveLimits& limits, const StopConfig& stop = {},
                               Backend backend = Backend::kLocalSearch) {
  require_valid(sc);
  return tune_penalty(sc.requirements.per_day(), sc.agent_count, build_week_partition(sc.day_count()),
                      limits, stop, backend);
}

}  // namespace shiftsched
