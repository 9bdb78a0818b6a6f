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

// File formats. These are the tool's public contract:
//
//   scenario     JSON: name, days, intervals_per_day, agents, shift_catalog
//                [{start, length}], requirements (rows of integers) or
//                volumes (rows of numbers, converted with Erlang-C on load),
//                sla {target, threshold_seconds}, aht_seconds, interval_seconds
//   schedule     CSV  agent,day_index,shift_start,shift_length
//   sweep trace  CSV  k,kl,p_d0,...,p_d{D-1}
//   report       JSON, one object per solve; comparison JSON for batches
//
// All writers go through a temp file and rename.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "shiftsched/core.hpp"
#include "shiftsched/erlang.hpp"
#include "shiftsched/metrics.hpp"
#include "shiftsched/penalty_tuner.hpp"

namespace shiftsched::io {

using Json = nlohmann::ordered_json;

class IoError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Plumbing
// ---------------------------------------------------------------------------

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Shortest representation that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InputError(where + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline long long parse_int(std::string_view s, const std::string& where) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InputError(where + ": not an integer: '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

namespace detail {

class SchemaReader {
 public:
  explicit SchemaReader(std::vector<std::string>& errors) : errors_(errors) {}

  const Json* field(const Json& obj, const std::string& path, const char* key, bool required = true) {
    if (!obj.is_object()) {
      errors_.push_back(path + ": expected object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) errors_.push_back(path + "/" + key + ": missing");
      return nullptr;
    }
    return &*it;
  }

  template <typename T>
  bool get(const Json* j, const std::string& path, T& out) {
    if (!j) return false;
    if constexpr (std::is_same_v<T, std::string>) {
      if (!j->is_string()) return fail(path, "expected string");
    } else if constexpr (std::is_integral_v<T>) {
      if (!j->is_number_integer()) return fail(path, "expected integer");
    } else {
      if (!j->is_number()) return fail(path, "expected number");
    }
    out = j->get<T>();
    return true;
  }

  template <typename T>
  bool get_grid(const Json* j, const std::string& path, std::vector<std::vector<T>>& out) {
    if (!j) return false;
    if (!j->is_array()) return fail(path, "expected array of rows");
    out.clear();
    for (std::size_t r = 0; r < j->size(); ++r) {
      const Json& row = (*j)[r];
      const std::string rp = path + "/" + std::to_string(r);
      if (!row.is_array()) return fail(rp, "expected array");
      std::vector<T> vals;
      for (std::size_t c = 0; c < row.size(); ++c) {
        T v{};
        if (!get(&row[c], rp + "/" + std::to_string(c), v)) return false;
        vals.push_back(v);
      }
      out.push_back(std::move(vals));
    }
    return true;
  }

  bool fail(const std::string& path, const std::string& msg) {
    errors_.push_back(path + ": " + msg);
    return false;
  }

 private:
  std::vector<std::string>& errors_;
};

}  // namespace detail

inline Json scenario_to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["days"] = s.days;
  j["intervals_per_day"] = s.intervals_per_day;
  j["agents"] = s.agent_count;
  Json shifts = Json::array();
  for (const Shift& sh : s.shift_catalog.shifts()) shifts.push_back({{"start", sh.start}, {"length", sh.length}});
  j["shift_catalog"] = shifts;
  Json rows = Json::array();
  for (std::size_t d = 0; d < s.requirements.days(); ++d) {
    const auto row = s.requirements.per_interval().row(d);
    rows.push_back(std::vector<int>(row.begin(), row.end()));
  }
  j["requirements"] = rows;
  j["sla"] = {{"target", s.sla_target}, {"threshold_seconds", s.sla_threshold_seconds}};
  j["aht_seconds"] = s.aht_seconds;
  j["interval_seconds"] = s.interval_seconds;
  return j;
}

inline std::string scenario_to_string(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

// Parses without validating scenario invariants (see validate_scenario);
// schema problems raise ValidationError with JSON-pointer style paths.
inline Scenario scenario_from_json(const Json& j) {
  std::vector<std::string> errors;
  detail::SchemaReader rd(errors);
  Scenario s;
  if (!j.is_object()) throw ValidationError({"/: expected object"});

  rd.get(rd.field(j, "", "name"), "/name", s.name);
  if (const Json* days = rd.field(j, "", "days")) {
    if (!days->is_array()) {
      rd.fail("/days", "expected array");
    } else {
      for (std::size_t i = 0; i < days->size(); ++i) {
        std::string d;
        if (rd.get(&(*days)[i], "/days/" + std::to_string(i), d)) s.days.push_back(d);
      }
    }
  }
  rd.get(rd.field(j, "", "intervals_per_day"), "/intervals_per_day", s.intervals_per_day);
  rd.get(rd.field(j, "", "agents"), "/agents", s.agent_count);
  if (const Json* cat = rd.field(j, "", "shift_catalog")) {
    if (!cat->is_array()) {
      rd.fail("/shift_catalog", "expected array");
    } else {
      std::vector<Shift> shifts;
      for (std::size_t i = 0; i < cat->size(); ++i) {
        const std::string p = "/shift_catalog/" + std::to_string(i);
        Shift sh;
        rd.get(rd.field((*cat)[i], p, "start"), p + "/start", sh.start);
        rd.get(rd.field((*cat)[i], p, "length"), p + "/length", sh.length);
        shifts.push_back(sh);
      }
      s.shift_catalog = ShiftCatalog(std::move(shifts));
    }
  }
  if (const Json* sla = rd.field(j, "", "sla")) {
    rd.get(rd.field(*sla, "/sla", "target"), "/sla/target", s.sla_target);
    rd.get(rd.field(*sla, "/sla", "threshold_seconds"), "/sla/threshold_seconds", s.sla_threshold_seconds);
  }
  rd.get(rd.field(j, "", "aht_seconds"), "/aht_seconds", s.aht_seconds);
  s.interval_seconds = s.intervals_per_day > 0 ? 86400.0 / s.intervals_per_day : 3600.0;
  rd.get(rd.field(j, "", "interval_seconds", false), "/interval_seconds", s.interval_seconds);

  const Json* req = rd.field(j, "", "requirements", false);
  const Json* vol = rd.field(j, "", "volumes", false);
  try {
    if (req) {
      std::vector<std::vector<int>> rows;
      if (rd.get_grid(req, "/requirements", rows)) s.requirements = RequirementMatrix(Grid<int>::from_rows(rows));
    } else if (vol) {
      std::vector<std::vector<double>> rows;
      if (rd.get_grid(vol, "/volumes", rows)) {
        s.requirements = erlang::requirements_from_volumes(
            Grid<double>::from_rows(rows), s.aht_seconds, {s.sla_target, s.sla_threshold_seconds},
            s.interval_seconds);
      }
    } else {
      errors.push_back("/: missing both 'requirements' and 'volumes'");
    }
  } catch (const InputError& e) {
    errors.push_back(std::string(req ? "/requirements: " : "/volumes: ") + e.what());
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return s;
}

inline Scenario scenario_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError({std::string("scenario is not valid JSON: ") + e.what()});
  }
  return scenario_from_json(j);
}

inline void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  atomic_write(path, scenario_to_string(s));
}

inline Scenario load_scenario(const std::filesystem::path& path) { return scenario_from_string(read_file(path)); }

// ---------------------------------------------------------------------------
// Schedule CSV
// ---------------------------------------------------------------------------

inline constexpr std::string_view kScheduleHeader = "agent,day_index,shift_start,shift_length";

inline std::string schedule_to_csv(const Schedule& sched, const ShiftCatalog& catalog) {
  std::string out(kScheduleHeader);
  out += '\n';
  for (const Assignment& a : sched) {
    const Shift& sh = catalog[a.shift];
    out += std::to_string(a.agent) + ',' + std::to_string(a.day) + ',' + std::to_string(sh.start) + ',' +
           std::to_string(sh.length) + '\n';
  }
  return out;
}

inline Schedule schedule_from_csv(const std::string& text, const ShiftCatalog& catalog) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kScheduleHeader) {
    throw InputError("schedule: expected header '" + std::string(kScheduleHeader) + "'");
  }
  std::vector<Assignment> items;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "schedule line " + std::to_string(i + 1);
    const auto cols = split_csv(lines[i]);
    if (cols.size() != 4) throw InputError(where + ": expected 4 columns");
    const Shift sh{static_cast<int>(parse_int(cols[2], where)), static_cast<int>(parse_int(cols[3], where))};
    const int idx = catalog.find(sh);
    if (idx < 0) {
      throw InputError(where + ": shift (" + std::to_string(sh.start) + "," + std::to_string(sh.length) +
                       ") not in catalog");
    }
    items.push_back({static_cast<int>(parse_int(cols[0], where)), static_cast<int>(parse_int(cols[1], where)), idx});
  }
  return Schedule(std::move(items));
}

inline void write_schedule(const Schedule& sched, const ShiftCatalog& catalog, const std::filesystem::path& path) {
  atomic_write(path, schedule_to_csv(sched, catalog));
}

inline Schedule read_schedule(const std::filesystem::path& path, const ShiftCatalog& catalog) {
  return schedule_from_csv(read_file(path), catalog);
}

// ---------------------------------------------------------------------------
// Numeric grids (volume input / requirement output of the CLI)
// ---------------------------------------------------------------------------

template <typename T>
std::string grid_to_csv(const Grid<T>& g) {
  std::string out;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (c) out += ',';
      if constexpr (std::is_floating_point_v<T>) out += format_double(g(r, c));
      else out += std::to_string(g(r, c));
    }
    out += '\n';
  }
  return out;
}

inline Grid<double> volume_grid_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<double> row;
    for (auto cell : split_csv(lines[i])) row.push_back(parse_double(cell, "volumes line " + std::to_string(i + 1)));
    rows.push_back(std::move(row));
  }
  return Grid<double>::from_rows(rows);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ReportOptions {
  bool include_timing = true;  // off for byte-reproducible output
};

inline Json report_to_json(const SolveReport& r, const ReportOptions& opts = {}) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["status"] = to_string(r.status);
  j["seed"] = r.seed;
  j["variable_count"] = r.variable_count;
  j["objective_value"] = r.objective_value;
  j["dvdi"] = r.dvdi;
  j["ivdi"] = r.ivdi;
  j["kl_day_distribution"] = r.kl_day_distribution ? Json(*r.kl_day_distribution) : Json(nullptr);
  j["day_coverage"] = r.day_coverage;
  j["moves"] = r.moves;
  if (opts.include_timing) j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

inline SolveStatus status_from_string(const std::string& s) {
  for (SolveStatus st : {SolveStatus::kOptimal, SolveStatus::kFeasible, SolveStatus::kInfeasible,
                         SolveStatus::kTimeoutNoSolution}) {
    if (s == to_string(st)) return st;
  }
  throw InputError("unknown status '" + s + "'");
}

inline SolveReport report_from_json(const Json& j) {
  try {
    SolveReport r;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "single" && mode != "multi") throw InputError("unknown mode '" + mode + "'");
    r.mode = mode == "single" ? Mode::kSingle : Mode::kMulti;
    r.status = status_from_string(j.at("status").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.variable_count = j.at("variable_count").get<std::int64_t>();
    r.objective_value = j.at("objective_value").get<std::int64_t>();
    r.dvdi = j.at("dvdi").get<std::int64_t>();
    r.ivdi = j.at("ivdi").get<std::int64_t>();
    if (!j.at("kl_day_distribution").is_null()) r.kl_day_distribution = j.at("kl_day_distribution").get<double>();
    r.day_coverage = j.at("day_coverage").get<std::vector<int>>();
    r.moves = j.at("moves").get<std::uint64_t>();
    if (j.contains("runtime_seconds")) r.runtime_seconds = j.at("runtime_seconds").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

inline void write_report(const SolveReport& r, const std::filesystem::path& path, const ReportOptions& opts = {}) {
  atomic_write(path, report_to_json(r, opts).dump(2) + "\n");
}

inline SolveReport read_report(const std::filesystem::path& path) {
  try {
    return report_from_json(Json::parse(read_file(path)));
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
}

inline Json comparison_to_json(const Comparison& c, const Scenario& sc, const ReportOptions& opts = {}) {
  const auto mode_json = [&](const ModeSummary& m) {
    Json j;
    Json mean;
    mean["variable_count"] = m.mean_variable_count;
    mean["objective_value"] = m.mean_objective;
    mean["ivdi"] = m.mean_ivdi;
    mean["dvdi"] = m.mean_dvdi;
    if (opts.include_timing) mean["runtime_seconds"] = m.mean_runtime_seconds;
    j["mean"] = mean;
    Json runs = Json::array();
    for (const SolveReport& r : m.runs) runs.push_back(report_to_json(r, opts));
    j["runs"] = runs;
    return j;
  };
  Json j;
  j["configuration"] = {{"scenario", sc.name},
                        {"agents", sc.agent_count},
                        {"days", sc.day_count()},
                        {"shifts", sc.shift_catalog.size()},
                        {"intervals", sc.intervals_per_day},
                        {"runs", c.single.runs.size()}};
  j["single"] = mode_json(c.single);
  j["multi"] = mode_json(c.multi);
  j["delta_multi_minus_single"] = {{"variable_count", c.delta_variable_count()},
                                   {"objective_value", c.delta_objective()},
                                   {"ivdi", c.delta_ivdi()},
                                   {"dvdi", c.delta_dvdi()}};
  return j;
}

inline void write_comparison(const Comparison& c, const Scenario& sc, const std::filesystem::path& path,
                             const ReportOptions& opts = {}) {
  atomic_write(path, comparison_to_json(c, sc, opts).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Sweep trace CSV
// ---------------------------------------------------------------------------

inline std::string sweep_trace_to_csv(const SweepTrace& trace) {
  const std::size_t days = trace.points.empty() ? 0 : trace.points.front().day_coverage.size();
  std::string out = "k,kl";
  for (std::size_t d = 0; d < days; ++d) out += ",p_d" + std::to_string(d);
  out += '\n';
  for (const SweepPoint& p : trace.points) {
    if (p.day_coverage.size() != days) throw InputError("sweep trace rows have different day counts");
    out += std::to_string(p.k) + ',' + format_double(p.kl);
    for (int v : p.day_coverage) out += ',' + std::to_string(v);
    out += '\n';
  }
  return out;
}

// K* is recomputed as the smallest K attaining the minimal KL.
inline SweepTrace sweep_trace_from_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw InputError("sweep trace: empty file");
  const auto header = split_csv(lines.front());
  if (header.size() < 2 || header[0] != "k" || header[1] != "kl") throw InputError("sweep trace: bad header");
  for (std::size_t d = 2; d < header.size(); ++d) {
    if (header[d] != "p_d" + std::to_string(d - 2)) throw InputError("sweep trace: bad header column");
  }
  SweepTrace t;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "sweep trace line " + std::to_string(i + 1);
    const auto cols = split_csv(lines[i]);
    if (cols.size() != header.size()) throw InputError(where + ": wrong column count");
    SweepPoint p;
    p.k = static_cast<int>(parse_int(cols[0], where));
    p.kl = parse_double(cols[1], where);
    for (std::size_t c = 2; c < cols.size(); ++c) p.day_coverage.push_back(static_cast<int>(parse_int(cols[c], where)));
    t.points.push_back(std::move(p));
  }
  for (std::size_t i = 1; i < t.points.size(); ++i) {
    if (t.points[i].kl < t.points[static_cast<std::size_t>(t.best_k)].kl) t.best_k = static_cast<int>(i);
  }
  return t;
}

inline void write_sweep_trace(const SweepTrace& trace, const std::filesystem::path& path) {
  atomic_write(path, sweep_trace_to_csv(trace));
}

inline SweepTrace read_sweep_trace(const std::filesystem::path& path) {
  return sweep_trace_from_csv(read_file(path));
}

}  // namespace shiftsched::io
