// Copyright 2026 The PDPCD Solver Authors
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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "pdpcd/branch_and_cut.h"
#include "pdpcd/formulation.h"
#include "pdpcd/generator.h"
#include "pdpcd/instance.h"
#include "pdpcd/solution.h"
#include "pdpcd/validator.h"

namespace pdpcd::cli {

namespace {

namespace fs = std::filesystem;

struct SolveFlags {
  double time_limit = 14400.0;
  double gap = 1e-6;
  bool no_cuts = false;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string json_path;
};

void AddSolveFlags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--time-limit", f.time_limit, "Time limit in seconds")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--gap", f.gap, "Relative optimality gap")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-cuts", f.no_cuts, "Leave out the valid inequalities");
  cmd->add_option("--seed", f.seed, "Seed (the search is deterministic)");
  cmd->add_option("--threads", f.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
}

SolveOptions ToOptions(const SolveFlags& f) {
  SolveOptions o;
  o.time_limit_s = f.time_limit;
  o.gap_tol = f.gap;
  o.enable_cuts = !f.no_cuts;
  o.seed = f.seed;
  o.threads = f.threads;
  return o;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InstanceError(fmt::format("cannot write {}", path));
  file << text;
}

std::string Number(double v, int digits) {
  return std::isfinite(v) ? fmt::format("{:.{}f}", v, digits) : std::string();
}

int ExitFor(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kTimeLimitFeasible:
      return kOk;
    case SolveStatus::kInfeasible:
      return kInfeasible;
    case SolveStatus::kTimeLimitNoSolution:
      return kNoSolution;
  }
  return kInternalError;
}

int RunSolve(const std::string& instance_path, const SolveFlags& flags,
             const std::string& output, const std::string& lp_path,
             int log_interval, bool quiet, bool no_time, std::ostream& out) {
  const Instance instance = ReadInstanceFile(instance_path);
  if (!lp_path.empty()) {
    const Formulation f = Formulate(instance, !flags.no_cuts);
    WriteText(lp_path, f.model.ToLpFormat());
  }
  SolveOptions options = ToOptions(flags);
  options.log_interval = log_interval;
  options.log_elapsed = !no_time;
  if (!quiet) options.log = &out;
  const SolveResult result = Solve(instance, options);
  if (!flags.json_path.empty()) WriteText(flags.json_path, result.SummaryJson());

  out << fmt::format("status: {}\n", SolveStatusName(result.status));
  if (!result.reason.empty()) out << fmt::format("reason: {}\n", result.reason);
  out << fmt::format("CNS {}  NE {}  CPU {:.3f} s\n", result.constraints,
                     result.nodes, result.cpu_seconds);
  if (!result.incumbent) return ExitFor(result.status);

  const std::string path =
      output.empty()
          ? fs::path(instance_path).stem().string() + "_solution.json"
          : output;
  WriteSolutionFile(*result.incumbent, path);
  out << fmt::format("solution written to {}\n\n", path);
  out << FormatRouteTable(instance, *result.incumbent);
  return ExitFor(result.status);
}

int RunValidate(const std::string& instance_path,
                const std::string& solution_path, const std::string& json_path,
                std::ostream& out) {
  const Instance instance = ReadInstanceFile(instance_path);
  const Solution solution = ReadSolutionFile(solution_path);
  const ValidationReport report = Validate(instance, solution);
  if (!json_path.empty()) WriteText(json_path, report.ToJson());
  out << FormatReport(instance, solution, report);
  return report.passed() ? kOk : kValidationFailed;
}

int RunBench(const std::string& dir, const SolveFlags& flags,
             const std::string& csv_path, std::ostream& out,
             std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::string csv = "instance,n,vehicles,CNS,NE,cpu_s,ost,status,gap\n";
  for (const fs::path& file : files) {
    Instance instance;
    try {
      instance = ReadInstanceFile(file.string());
    } catch (const InstanceError& e) {
      err << fmt::format("{}: {}\n", file.string(), e.what());
      csv += fmt::format("{},,,,,,,load-error,\n", file.stem().string());
      continue;
    }
    SolveOptions options = ToOptions(flags);
    options.log_interval = 0;
    const SolveResult r = Solve(instance, options);
    const std::string name =
        instance.name.empty() ? file.stem().string() : instance.name;
    csv += fmt::format("{},{},{},{},{},{:.3f},{},{},{}\n", name, instance.n(),
                       instance.num_vehicles(), r.constraints, r.nodes,
                       r.cpu_seconds,
                       r.incumbent ? Number(r.objective, 6) : std::string(),
                       SolveStatusName(r.status),
                       r.incumbent ? fmt::format("{:.3e}", r.gap)
                                   : std::string());
    err << fmt::format("{}: {} {}\n", name, SolveStatusName(r.status),
                       r.incumbent ? Number(r.objective, 3) : "-");
  }
  if (csv_path.empty()) {
    out << csv;
  } else {
    WriteText(csv_path, csv);
  }
  return kOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact solver for pickup and delivery with a crossdock"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  std::string instance_path, solution_path, output, lp_path, report_json;
  int log_interval = 100;
  bool quiet = false, no_time = false;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  AddSolveFlags(solve, solve_flags);
  solve->add_option("--json", solve_flags.json_path, "Write a JSON summary");
  solve->add_option("-o,--output", output,
                    "Solution file (default <stem>_solution.json)");
  solve->add_option("--lp", lp_path, "Export the model in LP format");
  solve->add_option("--log-interval", log_interval, "Nodes per log line");
  solve->add_flag("--quiet", quiet, "No solve log");
  solve->add_flag("--no-timestamps", no_time,
                  "Leave the elapsed time out of the log");

  CLI::App* validate =
      app.add_subcommand("validate", "Check a solution against an instance");
  validate->add_option("instance", instance_path, "Instance JSON")->required();
  validate->add_option("solution", solution_path, "Solution JSON")->required();
  validate->add_option("--json", report_json, "Write the report as JSON");

  GeneratorParams gen;
  std::string plan_path;
  CLI::App* generate = app.add_subcommand("generate", "Write a seeded instance");
  generate->add_option("--n", gen.n, "Requests");
  generate->add_option("--vehicles", gen.num_vehicles, "Vehicles");
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_option("--box", gen.box_size, "Coordinate box size");
  generate->add_option("--demand-min", gen.demand_min, "Smallest demand");
  generate->add_option("--demand-max", gen.demand_max, "Largest demand");
  generate->add_option("--capacity", gen.capacity, "Vehicle capacity");
  generate->add_option("--slack", gen.window_slack,
                       "Half-width of the time windows");
  generate->add_option("--ride-factor", gen.ride_factor,
                       "Ride-time limit over the planned maximum");
  generate->add_option("--duration-factor", gen.duration_factor,
                       "Route duration limit over the planned maximum");
  generate->add_option("--fixed-time", gen.fixed_time, "Crossdock fixed time");
  generate->add_option("--per-unit-time", gen.per_unit_time,
                       "Crossdock time per unit");
  generate->add_option("-o,--output", output, "Instance file")->required();
  generate->add_option("--plan", plan_path,
                       "Also write the plan the instance was built around");

  SolveFlags bench_flags;
  std::string dir;
  CLI::App* bench = app.add_subcommand("bench", "Solve every instance in a directory");
  bench->add_option("dir", dir, "Directory of instance JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  AddSolveFlags(bench, bench_flags);
  bench->add_option("-o,--output", output, "CSV file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (solve->parsed()) {
      return RunSolve(instance_path, solve_flags, output, lp_path,
                      log_interval, quiet, no_time, out);
    }
    if (validate->parsed()) {
      return RunValidate(instance_path, solution_path, report_json, out);
    }
    if (generate->parsed()) {
      const GeneratedInstance g = GenerateInstance(gen);
      WriteInstanceFile(g.instance, output);
      if (!plan_path.empty()) WriteSolutionFile(g.plan, plan_path);
      out << fmt::format("wrote {}\n", output);
      return kOk;
    }
    if (bench->parsed()) {
      return RunBench(dir, bench_flags, output, out, err);
    }
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const SolutionError& e) {
    err << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace pdpcd::cli
