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

// Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
// 2 validation failure or infeasible input.

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shiftsched/generators.hpp"
#include "shiftsched/io.hpp"
#include "shiftsched/metrics.hpp"
#include "shiftsched/multi_phase.hpp"
#include "shiftsched/phases.hpp"

namespace shiftsched::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;

struct RunConfig {
  std::string scenario_path;
  std::string mode = "multi";
  double time_budget_seconds = 60.0;
  std::optional<std::uint64_t> move_cap;
  double day_share = 0.20;
  std::uint64_t seed = 0;
  int penalty = 0;
  bool tune = false;
  int patience = 2;
  int k_max = 50;
  int runs = 10;
  std::string backend = "local";

  SolveLimits limits(std::uint64_t seed_offset = 0) const {
    SolveLimits l;
    l.time_budget_seconds = time_budget_seconds;
    l.seed = seed + seed_offset;
    l.move_cap = move_cap;
    return l;
  }
  Backend solver() const { return backend == "exact" ? Backend::kExact : Backend::kLocalSearch; }
  io::ReportOptions report_options() const { return {!move_cap.has_value()}; }
  StopConfig stop() const { return {patience, k_max, 1e-9}; }
};

namespace detail {

struct SolveOutcome {
  Schedule schedule;
  SolveReport report;
  std::optional<SweepTrace> sweep;
};

inline SolveOutcome solve_once(const Scenario& sc, const RunConfig& cfg, Mode mode, std::uint64_t seed_offset) {
  const SolveLimits limits = cfg.limits(seed_offset);
  SolveOutcome out;
  RunInfo info;
  info.seed = limits.seed;
  if (mode == Mode::kSingle) {
    SinglePhaseResult r = solve_single_phase(sc, limits, nullptr, cfg.solver());
    out.schedule = std::move(r.schedule);
    info = {r.report.runtime_seconds, limits.seed, r.report.status, r.report.moves};
  } else {
    MultiPhaseOptions opts;
    opts.day_share = cfg.day_share;
    opts.penalty_factor = cfg.penalty;
    if (cfg.tune) opts.tune = cfg.stop();
    opts.backend = cfg.solver();
    MultiPhaseResult r = solve_multi_phase(sc, limits, opts);
    out.schedule = std::move(r.schedule);
    out.sweep = std::move(r.sweep);
    info = {r.day.report.runtime_seconds + r.shift.report.runtime_seconds, limits.seed, r.shift.report.status,
            r.day.report.moves + r.shift.report.moves};
  }
  out.report = build_report(sc, out.schedule, mode, info);
  return out;
}

inline Mode parse_mode(const std::string& m) { return m == "single" ? Mode::kSingle : Mode::kMulti; }

inline void add_budget_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--time-budget", cfg.time_budget_seconds, "Wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--move-cap", cfg.move_cap, "Move-evaluation cap (reproducible budget)");
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--day-share", cfg.day_share, "Budget share for day allocation")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--backend", cfg.backend, "Solver backend")->check(CLI::IsMember({"local", "exact"}));
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shift scheduling with day-then-shift allocation", "shiftsched"};
  app.require_subcommand(1);
  RunConfig cfg;

  // gen-scenario
  auto* gen = app.add_subcommand("gen-scenario", "Write a synthetic scenario");
  std::string preset;
  std::string gen_out;
  PeakPresetSpec peak;
  SyntheticSpec synth;
  std::optional<int> agents;
  std::optional<int> weeks;
  gen->add_option("--preset", preset, "peak-week or synthetic")
      ->required()
      ->check(CLI::IsMember({"peak-week", "synthetic"}));
  gen->add_option("--out", gen_out, "Output scenario JSON")->required();
  gen->add_option("--agents", agents, "Number of agents");
  gen->add_option("--weeks", weeks, "Horizon in weeks");
  gen->add_option("--weekday-peak", peak.weekday_peak_requirement, "peak-week: weekday peak requirement");
  gen->add_option("--weekend-peak", peak.weekend_peak_requirement, "peak-week: weekend peak requirement");
  gen->add_option("--shifts", synth.shift_count, "synthetic: number of shifts");
  gen->add_option("--seed", synth.seed, "synthetic: demand seed");

  // requirements
  auto* req = app.add_subcommand("requirements", "Convert call volumes to required agents (Erlang-C)");
  std::string volumes_path;
  std::string req_out;
  double aht = 300.0;
  double interval_seconds = 3600.0;
  erlang::SlaSpec sla;
  req->add_option("--volumes", volumes_path, "CSV grid of call volumes, one row per day")->required();
  req->add_option("--out", req_out, "Output CSV grid of required agents")->required();
  req->add_option("--aht", aht, "Average handling time in seconds")->check(CLI::PositiveNumber);
  req->add_option("--interval-seconds", interval_seconds, "Interval length in seconds")->check(CLI::PositiveNumber);
  req->add_option("--sla-target", sla.target, "Service-level target fraction")->check(CLI::Range(0.0, 1.0));
  req->add_option("--sla-threshold", sla.threshold_seconds, "Service-level threshold in seconds");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve a scenario and write schedule + report");
  std::string out_schedule = "schedule.csv";
  std::string out_report = "report.json";
  solve->add_option("--scenario", cfg.scenario_path, "Scenario JSON")->required();
  solve->add_option("--mode", cfg.mode, "single or multi")->check(CLI::IsMember({"single", "multi"}));
  detail::add_budget_options(solve, cfg);
  solve->add_option("--penalty", cfg.penalty, "Day balance penalty factor K")->check(CLI::NonNegativeNumber);
  solve->add_flag("--tune", cfg.tune, "Choose K by KL sweep");
  solve->add_option("--patience", cfg.patience, "Sweep patience")->check(CLI::PositiveNumber);
  solve->add_option("--k-max", cfg.k_max, "Sweep upper bound")->check(CLI::NonNegativeNumber);
  solve->add_option("--out-schedule", out_schedule, "Schedule CSV path");
  solve->add_option("--out-report", out_report, "Report JSON path");

  // tune-penalty
  auto* tune = app.add_subcommand("tune-penalty", "Sweep K, write trace and the chosen-K schedule");
  std::string out_trace = "trace.csv";
  std::string tune_schedule = "schedule.csv";
  std::string tune_report;
  tune->add_option("--scenario", cfg.scenario_path, "Scenario JSON")->required();
  detail::add_budget_options(tune, cfg);
  tune->add_option("--patience", cfg.patience, "Sweep patience")->check(CLI::PositiveNumber);
  tune->add_option("--k-max", cfg.k_max, "Sweep upper bound")->check(CLI::NonNegativeNumber);
  tune->add_option("--out-trace", out_trace, "Sweep trace CSV path");
  tune->add_option("--out-schedule", tune_schedule, "Schedule CSV path");
  tune->add_option("--out-report", tune_report, "Optional report JSON path");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Report metrics for an existing schedule");
  std::string schedule_path;
  std::string metrics_out = "report.json";
  metrics->add_option("--scenario", cfg.scenario_path, "Scenario JSON")->required();
  metrics->add_option("--schedule", schedule_path, "Schedule CSV")->required();
  metrics->add_option("--mode", cfg.mode, "Mode used for the variable count")
      ->check(CLI::IsMember({"single", "multi"}));
  metrics->add_option("--out", metrics_out, "Report JSON path");

  // compare
  auto* cmp = app.add_subcommand("compare", "Seeded runs of both modes with per-mode means");
  std::string cmp_out = "comparison.json";
  cmp->add_option("--scenario", cfg.scenario_path, "Scenario JSON")->required();
  detail::add_budget_options(cmp, cfg);
  cmp->add_option("--runs", cfg.runs, "Runs per mode")->check(CLI::PositiveNumber);
  cmp->add_option("--penalty", cfg.penalty, "Day balance penalty factor K")->check(CLI::NonNegativeNumber);
  cmp->add_option("--out", cmp_out, "Comparison JSON path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!(cfg.day_share > 0.0 && cfg.day_share < 1.0)) {
    err << "error: --day-share must be strictly between 0 and 1\n";
    return kExitUsage;
  }

  try {
    if (*gen) {
      Scenario sc;
      if (preset == "peak-week") {
        if (agents) peak.agents = *agents;
        if (weeks) peak.weeks = *weeks;
        sc = gen_peak_scenario(peak);
      } else {
        if (agents) synth.agents = *agents;
        if (weeks) synth.weeks = *weeks;
        sc = gen_synthetic_scenario(synth);
      }
      io::save_scenario(sc, gen_out);
      out << "wrote " << gen_out << " (" << sc.agent_count << " agents, " << sc.day_count() << " days, "
          << sc.shift_catalog.size() << " shifts)\n";
      return kExitOk;
    }

    if (*req) {
      const Grid<double> volumes = io::volume_grid_from_csv(io::read_file(volumes_path));
      const RequirementMatrix r = erlang::requirements_from_volumes(volumes, aht, sla, interval_seconds);
      io::atomic_write(req_out, io::grid_to_csv(r.per_interval()));
      out << "wrote " << req_out << " (" << r.days() << "x" << r.intervals() << ")\n";
      return kExitOk;
    }

    const Scenario sc = io::load_scenario(cfg.scenario_path);
    require_valid(sc);

    if (*solve) {
      const auto res = detail::solve_once(sc, cfg, detail::parse_mode(cfg.mode), 0);
      io::write_schedule(res.schedule, sc.shift_catalog, out_schedule);
      io::write_report(res.report, out_report, cfg.report_options());
      out << cfg.mode << ": objective " << res.report.objective_value << ", ivdi " << res.report.ivdi << ", dvdi "
          << res.report.dvdi << "\n";
      return kExitOk;
    }

    if (*tune) {
      cfg.tune = true;
      cfg.mode = "multi";
      const auto res = detail::solve_once(sc, cfg, Mode::kMulti, 0);
      io::write_sweep_trace(*res.sweep, out_trace);
      io::write_schedule(res.schedule, sc.shift_catalog, tune_schedule);
      if (!tune_report.empty()) io::write_report(res.report, tune_report, cfg.report_options());
      out << "K* = " << res.sweep->best_k << ", kl " << io::format_double(res.sweep->best().kl) << "\n";
      return kExitOk;
    }

    if (*metrics) {
      const Schedule sched = io::read_schedule(schedule_path, sc.shift_catalog);
      const SolveReport r = build_report(sc, sched, detail::parse_mode(cfg.mode), {});
      io::write_report(r, metrics_out, {false});
      out << "ivdi " << r.ivdi << ", dvdi " << r.dvdi << "\n";
      return kExitOk;
    }

    if (*cmp) {
      std::vector<SolveReport> single;
      std::vector<SolveReport> multi;
      for (int i = 0; i < cfg.runs; ++i) {
        single.push_back(detail::solve_once(sc, cfg, Mode::kSingle, i).report);
        multi.push_back(detail::solve_once(sc, cfg, Mode::kMulti, i).report);
      }
      const Comparison c = compare_runs(std::move(single), std::move(multi));
      io::write_comparison(c, sc, cmp_out, cfg.report_options());
      out << "mean ivdi single " << c.single.mean_ivdi << " multi " << c.multi.mean_ivdi << "; mean dvdi single "
          << c.single.mean_dvdi << " multi " << c.multi.mean_dvdi << "\n";
      return kExitOk;
    }
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace shiftsched::cli
