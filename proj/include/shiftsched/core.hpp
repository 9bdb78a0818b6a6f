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

// Problem-instance and solution types shared by every module, plus the
// coverage/deviation accounting that all objectives and metrics are built on.

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftsched {

inline constexpr int kDaysPerWeek = 7;
inline constexpr int kWorkDaysPerWeek = 5;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: out-of-range indices, dimension mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

// Horizon is not made of whole weeks.
class HorizonError : public InputError {
 public:
  using InputError::InputError;
};

// Exact solver refused because the search space exceeds its cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A schedule or scenario violates invariants; carries the violation list.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

// Dense row-major matrix. Rows are days throughout the library.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Grid from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Grid g(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("ragged grid rows");
      std::copy(rows[r].begin(), rows[r].end(), g.row(r).begin());
    }
    return g;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// ---------------------------------------------------------------------------
// Shifts and weeks
// ---------------------------------------------------------------------------

struct Shift {
  int start = 0;   // first covered interval
  int length = 1;  // number of covered intervals

  bool covers(int t) const { return t >= start && t < start + length; }
  int end() const { return start + length; }

  auto operator<=>(const Shift&) const = default;
};

class ShiftCatalog {
 public:
  ShiftCatalog() = default;
  explicit ShiftCatalog(std::vector<Shift> shifts) : shifts_(std::move(shifts)) {}

  // `count` shifts starting at first_start, first_start+step, ... of equal length.
  static ShiftCatalog uniform(int count, int first_start, int step, int length) {
    std::vector<Shift> s;
    for (int i = 0; i < count; ++i) s.push_back({first_start + i * step, length});
    return ShiftCatalog(std::move(s));
  }

  std::size_t size() const { return shifts_.size(); }
  bool empty() const { return shifts_.empty(); }
  const Shift& operator[](std::size_t i) const { return shifts_[i]; }
  const std::vector<Shift>& shifts() const { return shifts_; }

  // I_ST(s, t).
  bool covers(std::size_t s, int t) const { return shifts_[s].covers(t); }

  // Index of the shift with the given start/length, or -1.
  int find(const Shift& s) const {
    auto it = std::find(shifts_.begin(), shifts_.end(), s);
    return it == shifts_.end() ? -1 : static_cast<int>(it - shifts_.begin());
  }

  bool operator==(const ShiftCatalog&) const = default;

 private:
  std::vector<Shift> shifts_;
};

struct WeekRange {
  int first = 0;  // inclusive
  int last = 0;   // inclusive

  int size() const { return last - first + 1; }
  bool contains(int d) const { return d >= first && d <= last; }
  bool operator==(const WeekRange&) const = default;
};

struct WeekPartition {
  std::vector<WeekRange> weeks;

  std::size_t size() const { return weeks.size(); }
  int week_of(int day) const { return day / kDaysPerWeek; }
  bool operator==(const WeekPartition&) const = default;
};

inline WeekPartition build_week_partition(int day_count) {
  if (day_count <= 0 || day_count % kDaysPerWeek != 0) {
    throw HorizonError("horizon not a multiple of 7 (got " + std::to_string(day_count) +
                       " days)");
  }
  WeekPartition p;
  for (int first = 0; first < day_count; first += kDaysPerWeek) {
    p.weeks.push_back({first, first + kDaysPerWeek - 1});
  }
  return p;
}

// ---------------------------------------------------------------------------
// Requirements
// ---------------------------------------------------------------------------

// R_DT and the derived daily peak R_D(d) = max_t R_DT(d, t).
class RequirementMatrix {
 public:
  RequirementMatrix() = default;
  explicit RequirementMatrix(Grid<int> per_interval) : per_interval_(std::move(per_interval)) {
    per_day_.resize(per_interval_.rows(), 0);
    for (std::size_t d = 0; d < per_interval_.rows(); ++d) {
      for (int v : per_interval_.row(d)) {
        if (v < 0) throw InputError("requirements must be non-negative");
        per_day_[d] = std::max(per_day_[d], v);
      }
    }
  }

  std::size_t days() const { return per_interval_.rows(); }
  std::size_t intervals() const { return per_interval_.cols(); }
  const Grid<int>& per_interval() const { return per_interval_; }
  const std::vector<int>& per_day() const { return per_day_; }

  bool operator==(const RequirementMatrix&) const = default;

 private:
  Grid<int> per_interval_;
  std::vector<int> per_day_;
};

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

struct Scenario {
  std::string name;
  std::vector<std::string> days;  // ISO yyyy-mm-dd labels
  int intervals_per_day = 24;
  int agent_count = 0;
  ShiftCatalog shift_catalog;
  RequirementMatrix requirements;
  double sla_target = 0.8;
  double sla_threshold_seconds = 20.0;
  double aht_seconds = 300.0;
  double interval_seconds = 3600.0;

  int day_count() const { return static_cast<int>(days.size()); }
  bool operator==(const Scenario&) const = default;
};

namespace detail {

inline bool parse_iso_date(const std::string& s, std::chrono::sys_days& out) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char tail = 0;
  if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
    return false;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return false;
  out = std::chrono::sys_days{ymd};
  return true;
}

inline std::string format_iso_date(std::chrono::sys_days day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace detail

// `count` consecutive ISO dates starting at `first`.
inline std::vector<std::string> consecutive_dates(const std::string& first, int count) {
  std::chrono::sys_days day;
  if (!detail::parse_iso_date(first, day)) throw InputError("bad date: " + first);
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(detail::format_iso_date(day + std::chrono::days{i}));
  return out;
}

inline std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  const int n_days = s.day_count();

  if (n_days == 0 || n_days % kDaysPerWeek != 0) {
    v.push_back("horizon not a multiple of 7 (" + std::to_string(n_days) + " days)");
  }
  std::chrono::sys_days prev{};
  for (int d = 0; d < n_days; ++d) {
    std::chrono::sys_days cur;
    if (!detail::parse_iso_date(s.days[d], cur)) {
      v.push_back("days[" + std::to_string(d) + "] is not an ISO date: '" + s.days[d] + "'");
      continue;
    }
    if (d > 0 && cur <= prev) {
      v.push_back("days not strictly increasing at index " + std::to_string(d));
    }
    prev = cur;
  }
  if (s.intervals_per_day <= 0) v.push_back("intervals_per_day must be positive");
  if (s.agent_count < 0) v.push_back("agent_count must be non-negative");

  if (s.shift_catalog.empty()) v.push_back("shift catalog is empty");
  for (std::size_t i = 0; i < s.shift_catalog.size(); ++i) {
    const Shift& sh = s.shift_catalog[i];
    const std::string tag = "shift " + std::to_string(i) + " (start=" + std::to_string(sh.start) +
                            ", length=" + std::to_string(sh.length) + ")";
    if (sh.length <= 0) v.push_back(tag + ": length must be positive");
    if (sh.start < 0) v.push_back(tag + ": negative start");
    if (sh.end() > s.intervals_per_day) v.push_back(tag + ": shift exceeds day boundary");
    for (std::size_t j = 0; j < i; ++j) {
      if (s.shift_catalog[j] == sh) v.push_back(tag + ": duplicate shift");
    }
  }

  const auto& req = s.requirements;
  if (static_cast<int>(req.days()) != n_days ||
      static_cast<int>(req.intervals()) != s.intervals_per_day) {
    v.push_back("requirements dimensions " + std::to_string(req.days()) + "x" +
                std::to_string(req.intervals()) + " do not match " + std::to_string(n_days) + "x" +
                std::to_string(s.intervals_per_day));
  }
  if (!(s.sla_target > 0.0 && s.sla_target <= 1.0)) v.push_back("sla target must be in (0,1]");
  if (!(s.sla_threshold_seconds > 0.0)) v.push_back("sla threshold must be positive");
  if (!(s.aht_seconds > 0.0)) v.push_back("aht_seconds must be positive");
  if (!(s.interval_seconds > 0.0)) v.push_back("interval_seconds must be positive");
  return v;
}

inline void require_valid(const Scenario& s) {
  auto v = validate_scenario(s);
  if (!v.empty()) throw ValidationError(std::move(v));
}

// ---------------------------------------------------------------------------
// Allocations and schedules
// ---------------------------------------------------------------------------

// B_AD with per-day head-counts n_d.
class DayAllocation {
 public:
  DayAllocation() = default;
  DayAllocation(int agents, int days) : works_(agents, days, 0), day_counts_(days, 0) {}

  int agents() const { return static_cast<int>(works_.rows()); }
  int days() const { return static_cast<int>(works_.cols()); }

  bool works(int a, int d) const { return works_(a, d) != 0; }
  void set(int a, int d, bool on) {
    auto& cell = works_(a, d);
    if ((cell != 0) == on) return;
    day_counts_[d] += on ? 1 : -1;
    cell = on ? 1 : 0;
  }

  const std::vector<int>& day_counts() const { return day_counts_; }
  const Grid<std::uint8_t>& grid() const { return works_; }

  // (agent, day) pairs with B_AD = 1, ordered by (agent, day).
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < agents(); ++a)
      for (int d = 0; d < days(); ++d)
        if (works(a, d)) out.emplace_back(a, d);
    return out;
  }

  bool operator==(const DayAllocation&) const = default;

 private:
  Grid<std::uint8_t> works_;
  std::vector<int> day_counts_;
};

struct Assignment {
  int agent = 0;
  int day = 0;
  int shift = 0;  // index into the shift catalog

  auto operator<=>(const Assignment&) const = default;
};

// Sparse B_ADS; kept sorted by (agent, day, shift).
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(std::vector<Assignment> a) : items_(std::move(a)) {
    std::sort(items_.begin(), items_.end());
  }

  void add(Assignment a) {
    items_.insert(std::upper_bound(items_.begin(), items_.end(), a), a);
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Assignment>& assignments() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const Schedule&) const = default;

 private:
  std::vector<Assignment> items_;
};

struct Dims {
  int agents = 0;
  int days = 0;
  int intervals = 0;
};

// P_DT and P_D.
struct CoverageProfile {
  Grid<int> per_interval;
  std::vector<int> per_day;
  bool operator==(const CoverageProfile&) const = default;
};

// U_DT = R_DT - P_DT and U_D = R_D - P_D; positive means under-staffed.
struct DeviationProfile {
  Grid<int> per_interval;
  std::vector<int> per_day;
  bool operator==(const DeviationProfile&) const = default;
};

inline CoverageProfile coverage_from_schedule(const Schedule& sched, const ShiftCatalog& catalog,
                                              const Dims& dims) {
  CoverageProfile cov{Grid<int>(dims.days, dims.intervals, 0), std::vector<int>(dims.days, 0)};
  const Assignment* prev = nullptr;
  for (const Assignment& a : sched) {
    if (a.agent < 0 || a.agent >= dims.agents) {
      throw InputError("assignment agent index out of range: " + std::to_string(a.agent));
    }
    if (a.day < 0 || a.day >= dims.days) {
      throw InputError("assignment day index out of range: " + std::to_string(a.day));
    }
    if (a.shift < 0 || a.shift >= static_cast<int>(catalog.size())) {
      throw InputError("assignment shift index out of range: " + std::to_string(a.shift));
    }
    const Shift& sh = catalog[a.shift];
    for (int t = std::max(0, sh.start); t < std::min(sh.end(), dims.intervals); ++t) {
      ++cov.per_interval(a.day, t);
    }
    // Sorted by (agent, day): count each agent once per day.
    if (!prev || prev->agent != a.agent || prev->day != a.day) ++cov.per_day[a.day];
    prev = &a;
  }
  return cov;
}

inline DeviationProfile deviation_profiles(const RequirementMatrix& req, const CoverageProfile& cov) {
  if (req.days() != cov.per_interval.rows() || req.intervals() != cov.per_interval.cols() ||
      req.per_day().size() != cov.per_day.size()) {
    throw InputError("requirement and coverage dimensions differ");
  }
  DeviationProfile dev{Grid<int>(req.days(), req.intervals(), 0),
                       std::vector<int>(req.days(), 0)};
  for (std::size_t d = 0; d < req.days(); ++d) {
    for (std::size_t t = 0; t < req.intervals(); ++t) {
      dev.per_interval(d, t) = req.per_interval()(d, t) - cov.per_interval(d, t);
    }
    dev.per_day[d] = req.per_day()[d] - cov.per_day[d];
  }
  return dev;
}

// Violations of the scheduling rules: index ranges, at most one shift per
// agent-day, exactly five working days per agent-week.
inline std::vector<std::string> schedule_violations(const Schedule& sched, const ShiftCatalog& catalog,
                                                    int agents, int days) {
  std::vector<std::string> v;
  if (days <= 0 || days % kDaysPerWeek != 0) {
    v.push_back("horizon not a multiple of 7");
    return v;
  }
  const int weeks = days / kDaysPerWeek;
  Grid<int> per_agent_week(std::max(agents, 0), weeks, 0);
  const Assignment* prev = nullptr;
  for (const Assignment& a : sched) {
    if (a.agent < 0 || a.agent >= agents || a.day < 0 || a.day >= days || a.shift < 0 ||
        a.shift >= static_cast<int>(catalog.size())) {
      v.push_back("assignment (" + std::to_string(a.agent) + "," + std::to_string(a.day) + "," +
                  std::to_string(a.shift) + ") out of range");
      continue;
    }
    if (prev && prev->agent == a.agent && prev->day == a.day) {
      v.push_back("agent " + std::to_string(a.agent) + " has more than one shift on day " +
                  std::to_string(a.day));
    } else {
      ++per_agent_week(a.agent, a.day / kDaysPerWeek);
    }
    prev = &a;
  }
  for (int a = 0; a < agents; ++a) {
    for (int w = 0; w < weeks; ++w) {
      if (per_agent_week(a, w) != kWorkDaysPerWeek) {
        v.push_back("agent " + std::to_string(a) + " works " + std::to_string(per_agent_week(a, w)) +
                    " days in week " + std::to_string(w));
      }
    }
  }
  return v;
}

// Violations of the weekly five-day rule for a day allocation.
inline std::vector<std::string> allocation_violations(const DayAllocation& alloc) {
  std::vector<std::string> v;
  if (alloc.days() % kDaysPerWeek != 0) {
    v.push_back("horizon not a multiple of 7");
    return v;
  }
  for (int a = 0; a < alloc.agents(); ++a) {
    for (int w = 0; w < alloc.days() / kDaysPerWeek; ++w) {
      int n = 0;
      for (int d = w * kDaysPerWeek; d < (w + 1) * kDaysPerWeek; ++d) n += alloc.works(a, d);
      if (n != kWorkDaysPerWeek) {
        v.push_back("agent " + std::to_string(a) + " works " + std::to_string(n) + " days in week " +
                    std::to_string(w));
      }
    }
  }
  return v;
}

// Day allocation implied by a schedule (B_AD(a,d) = Σ_s B_ADS(a,d,s)).
inline DayAllocation allocation_of(const Schedule& sched, int agents, int days) {
  DayAllocation alloc(agents, days);
  for (const Assignment& a : sched) alloc.set(a.agent, a.day, true);
  return alloc;
}

// C_ADS, dense, integer-valued so objectives stay exact.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int agents, int days, int shifts, std::int64_t fill = 0)
      : agents_(agents), days_(days), shifts_(shifts),
        cost_(static_cast<std::size_t>(agents) * days * shifts, fill) {
    if (fill < 0) throw InputError("costs must be non-negative");
  }

  int agents() const { return agents_; }
  int days() const { return days_; }
  int shifts() const { return shifts_; }

  std::int64_t operator()(int a, int d, int s) const { return cost_[index(a, d, s)]; }
  void set(int a, int d, int s, std::int64_t c) {
    if (c < 0) throw InputError("costs must be non-negative");
    cost_[index(a, d, s)] = c;
  }

 private:
  std::size_t index(int a, int d, int s) const {
    return (static_cast<std::size_t>(a) * days_ + d) * shifts_ + s;
  }

  int agents_ = 0;
  int days_ = 0;
  int shifts_ = 0;
  std::vector<std::int64_t> cost_;
};

// Σ_d Σ_t U_DT(d,t)^2.
inline std::int64_t interval_squared_deviation(const DeviationProfile& dev) {
  std::int64_t sum = 0;
  for (int u : dev.per_interval.data()) sum += static_cast<std::int64_t>(u) * u;
  return sum;
}

}  // namespace shiftsched
