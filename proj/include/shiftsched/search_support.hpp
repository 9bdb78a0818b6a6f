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

#include <chrono>
#include <cstdint>
#include <random>

#include "shiftsched/model.hpp"

namespace shiftsched {

// mt19937_64's output sequence is fixed by the standard; the bounded draw is
// done here because std::uniform_int_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n), n > 0.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

 private:
  std::mt19937_64 engine_;
};

// Move-evaluation counter with either a hard cap or a wall-clock deadline.
class MoveBudget {
 public:
  explicit MoveBudget(const SolveLimits& limits)
      : cap_(limits.move_cap),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(limits.time_budget_seconds))) {}

  // Consumes one evaluation; false once the budget is spent.
  bool take() {
    if (exhausted_) return false;
    if (cap_) {
      if (used_ >= *cap_) {
        exhausted_ = true;
        return false;
      }
    } else if ((used_ & 0xFF) == 0 && std::chrono::steady_clock::now() >= deadline_) {
      exhausted_ = true;
      return false;
    }
    ++used_;
    return true;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t used() const { return used_; }

 private:
  std::optional<std::uint64_t> cap_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Local-search tuning knobs shared by the count and joint searches.
struct SearchOptions {
  // Consecutive non-improving restart kicks before declaring convergence.
  int max_stagnant_kicks = 60;
};

}  // namespace shiftsched
