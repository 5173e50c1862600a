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

// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "pdpcd/arcs.h"
#include "pdpcd/branch_and_cut.h"
#include "pdpcd/exhaustive.h"
#include "pdpcd/generator.h"
#include "pdpcd/instance.h"
#include "pdpcd/solution.h"
#include "pdpcd/validator.h"
#include "test_util.h"

namespace pdpcd {
namespace {

using ::pdpcd::testing::DataPath;
using ::pdpcd::testing::ToyInstance;

constexpr double kObjectiveRelTol = 1e-6;
constexpr double kRideAbsTol = 1e-6;
constexpr double kReferenceCostTol = 1e-3;
constexpr double kToyRelTol = 0.01;
constexpr double kCapacityLimitS = 900.0;

double RelDiff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

SolveOptions Options(bool cuts = true) {
  SolveOptions o;
  o.enable_cuts = cuts;
  o.log_interval = 0;
  return o;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void Report(int id, const std::string& title, const Outcome& o) {
  std::cout << fmt::format("criterion {} [PRIMARY] {}: {} ({})\n", id, title,
                           o.pass ? "PASS" : "FAIL", o.detail);
  std::cout.flush();
  if (!o.pass) ++failures;
}

std::set<std::pair<int, int>> UsedArcs(const Instance& inst,
                                       const Solution& s) {
  std::set<std::pair<int, int>> used;
  for (const VehicleRoute& r : s.vehicles) {
    int prev = inst.o1();
    for (int v : r.pickup_route) used.insert({prev, v}), prev = v;
    used.insert({prev, inst.o2()});
    prev = inst.o3();
    for (int v : r.delivery_route) used.insert({prev, v}), prev = v;
    used.insert({prev, inst.o4()});
  }
  return used;
}

std::string RouteKey(const Solution& s) {
  std::vector<std::string> parts;
  for (const VehicleRoute& r : s.vehicles) {
    std::string p = "P", d = "D";
    for (int v : r.pickup_route) p += fmt::format(" {}", v);
    for (int v : r.delivery_route) d += fmt::format(" {}", v);
    parts.push_back(p);
    parts.push_back(d);
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const std::string& p : parts) key += p + ";";
  return key;
}

// The criterion-1 suite: n in {2, 3, 4}, two vehicles. Every fourth
// instance gets its ride limit cut to 60% so the suite also holds
// infeasible cases.
std::vector<Instance> OracleSuite() {
  std::vector<Instance> suite;
  for (int s = 0; s < 50; ++s) {
    GeneratorParams p;
    p.n = 2 + s % 3;
    p.num_vehicles = 2;
    p.seed = 1000 + s;
    p.window_slack = s % 2 == 0 ? 60.0 : 30.0;
    Instance inst = GenerateInstance(p).instance;
    if (s % 4 == 3) inst.max_ride_time = std::floor(0.6 * inst.max_ride_time);
    suite.push_back(std::move(inst));
  }
  return suite;
}

struct SuiteRun {
  Instance instance;
  SolveResult oracle;
  SolveResult solver;
};

void Criteria1248() {
  std::vector<SuiteRun> runs;
  for (Instance& inst : OracleSuite()) {
    SuiteRun run{inst, BruteForceSolve(inst), Solve(inst, Options())};
    runs.push_back(std::move(run));
  }

  // 1. Oracle equivalence.
  {
    Outcome o;
    int feasible = 0, infeasible = 0;
    double worst = 0.0;
    for (const SuiteRun& r : runs) {
      const bool of = r.oracle.status == SolveStatus::kOptimal;
      const bool sf = r.solver.status == SolveStatus::kOptimal;
      const bool si = r.solver.status == SolveStatus::kInfeasible;
      if (of) {
        ++feasible;
        if (!sf) {
          o.pass = false;
          continue;
        }
        worst = std::max(worst, RelDiff(r.solver.objective, r.oracle.objective));
      } else {
        ++infeasible;
        if (!si) o.pass = false;
      }
    }
    if (worst > kObjectiveRelTol) o.pass = false;
    o.detail = fmt::format(
        "{} instances, {} feasible, {} infeasible, max rel diff {:.2e}, tol "
        "{:.0e}",
        runs.size(), feasible, infeasible, worst, kObjectiveRelTol);
    Report(1, "oracle equivalence", o);
  }

  // 2. Validator soundness on every incumbent.
  {
    Outcome o;
    int checked = 0, violations = 0;
    for (const SuiteRun& r : runs) {
      if (!r.solver.incumbent) continue;
      ++checked;
      const ValidationReport report = Validate(r.instance, *r.solver.incumbent);
      violations += report.num_violations();
      if (!report.passed()) o.pass = false;
    }
    o.detail = fmt::format("{} incumbents, {} violations", checked, violations);
    Report(2, "validator soundness", o);
  }

  // 4. r variables against the direct ride-time computation.
  {
    Outcome o;
    int checked = 0;
    double worst = 0.0;
    for (const SuiteRun& r : runs) {
      if (!r.solver.incumbent) continue;
      const Solution& s = *r.solver.incumbent;
      const std::vector<double> direct = ComputeRideTimes(r.instance, s);
      for (std::size_t i = 0; i < direct.size(); ++i) {
        worst = std::max(worst, std::abs(s.requests[i].ride_time - direct[i]));
        ++checked;
      }
    }
    o.pass = worst <= kRideAbsTol && checked > 0;
    o.detail = fmt::format("{} ride times, max abs diff {:.2e}, tol {:.0e}",
                           checked, worst, kRideAbsTol);
    Report(4, "linearization equivalence", o);
  }

  // 8. Preprocessing soundness on the oracle optima.
  {
    Outcome o;
    int optima = 0, removed_used = 0, conflicts_used = 0, conflicts = 0;
    for (const SuiteRun& r : runs) {
      if (!r.oracle.incumbent) continue;
      ++optima;
      const ArcSet reduced =
          EliminateInfeasibleArcs(r.instance, BuildArcSet(r.instance));
      const auto used = UsedArcs(r.instance, *r.oracle.incumbent);
      for (const auto& [from, to] : used) {
        if (!reduced.Contains(from, to)) ++removed_used;
      }
      for (const ConflictPair& c : reduced.conflicts()) {
        ++conflicts;
        const Arc& p = reduced.arc(c.pickup_arc);
        const Arc& d = reduced.arc(c.delivery_arc);
        if (used.count({p.from, p.to}) && used.count({d.from, d.to})) {
          ++conflicts_used;
        }
      }
    }
    o.pass = removed_used == 0 && conflicts_used == 0;
    o.detail = fmt::format(
        "{} optima, {} removed arcs used, {} of {} conflict pairs used", optima,
        removed_used, conflicts_used, conflicts);
    Report(8, "preprocessing soundness", o);
  }
}

void Criterion3() {
  Outcome o;
  double worst = 0.0;
  std::string nodes;
  for (int s = 0; s < 20; ++s) {
    GeneratorParams p;
    p.n = 3 + s % 3;
    p.num_vehicles = 2;
    p.seed = 2000 + s;
    const Instance inst = GenerateInstance(p).instance;
    const SolveResult with = Solve(inst, Options(true));
    const SolveResult without = Solve(inst, Options(false));
    if (with.status != SolveStatus::kOptimal ||
        without.status != SolveStatus::kOptimal) {
      o.pass = false;
      continue;
    }
    worst = std::max(worst, RelDiff(without.objective, with.objective));
    std::cout << fmt::format("  cut neutrality {:<16} n={} NE cuts {:>6}  "
                             "NE no-cuts {:>6}  ost {:.6f}\n",
                             inst.name, inst.n(), with.nodes, without.nodes,
                             with.objective);
  }
  if (worst > kObjectiveRelTol) o.pass = false;
  o.detail = fmt::format("20 instances, max rel diff {:.2e}, tol {:.0e}",
                         worst, kObjectiveRelTol);
  Report(3, "cut neutrality", o);
}

void Criterion5() {
  Outcome o;
  const Instance toy = ToyInstance();
  const Solution s =
      ReadSolutionFile(DataPath("toy_reference_schedule.json"));
  const ValidationReport report = Validate(toy, s);
  const double rides[] = {381.0, 307.5, 483.2, 414.5};
  const std::vector<double> direct = ComputeRideTimes(toy, s);
  for (int i = 0; i < 4; ++i) {
    if (direct[i] != rides[i] && std::abs(direct[i] - rides[i]) > 1e-9) {
      o.pass = false;
    }
    if (direct[i] > toy.max_ride_time) o.pass = false;
  }
  for (const VehicleRoute& r : s.vehicles) {
    if (std::abs((r.end_time - r.crossdock_departure) - 480.0) > 1e-9) {
      o.pass = false;
    }
  }
  const double pick0 = s.vehicles[0].crossdock_arrival - s.vehicles[0].start_time;
  const double pick1 = s.vehicles[1].crossdock_arrival - s.vehicles[1].start_time;
  if (std::abs(pick0 - 239.99) > 1e-9 || std::abs(pick1 - 286.82) > 1e-9 ||
      pick0 > 480.0 || pick1 > 480.0) {
    o.pass = false;
  }
  for (const char* family : {"eq3", "eq9", "eq19", "eq20", "eq22"}) {
    if (!report.Family(family)->passed()) o.pass = false;
  }
  const double cost = EvaluateCost(toy, s);
  if (std::abs(cost - 1101.234) > kReferenceCostTol) o.pass = false;
  o.detail = fmt::format(
      "r = {:.1f}/{:.1f}/{:.1f}/{:.1f}, pickup durations {:.2f}/{:.2f}, "
      "delivery durations {:.1f}/{:.1f}, cost {:.3f} (tol {:.0e}); "
      "eq9/eq19/eq20/eq22 pass",
      direct[0], direct[1], direct[2], direct[3], pick0, pick1,
      s.vehicles[0].end_time - s.vehicles[0].crossdock_departure,
      s.vehicles[1].end_time - s.vehicles[1].crossdock_departure, cost,
      kReferenceCostTol);
  Report(5, "reference toy values", o);
}

void Criterion6() {
  Outcome o;
  const Instance toy = ToyInstance();
  const SolveResult r = Solve(toy, Options());
  if (!r.incumbent || r.status != SolveStatus::kOptimal) {
    o.pass = false;
    o.detail = SolveStatusName(r.status);
    Report(6, "toy solve", o);
    return;
  }
  Solution expected;
  expected.vehicles.resize(2);
  expected.vehicles[0].pickup_route = {3, 1};
  expected.vehicles[0].delivery_route = {7, 5};
  expected.vehicles[1].pickup_route = {2, 4};
  expected.vehicles[1].delivery_route = {6, 8};
  const bool routes = RouteKey(*r.incumbent) == RouteKey(expected);
  const double diff = RelDiff(r.objective, 1101.23);
  o.pass = routes && diff <= kToyRelTol;
  o.detail = fmt::format("objective {:.3f}, rel diff {:.2e}, tol {:.0e}, "
                         "route set {}, NE {}",
                         r.objective, diff, kToyRelTol,
                         routes ? "matches" : "differs", r.nodes);
  Report(6, "toy solve", o);
}

void Criterion7() {
  Outcome o;
  double slowest = 0.0;
  std::string summary;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GeneratorParams p;
    p.n = 6;
    p.num_vehicles = 2;
    p.seed = seed;
    const Instance inst = GenerateInstance(p).instance;
    SolveOptions opt = Options();
    opt.time_limit_s = kCapacityLimitS;
    const SolveResult r = Solve(inst, opt);
    const bool ok = r.status == SolveStatus::kOptimal && r.gap <= 1e-6 &&
                    r.cpu_seconds <= kCapacityLimitS;
    if (!ok) o.pass = false;
    slowest = std::max(slowest, r.cpu_seconds);
    std::cout << fmt::format("  capacity {:<16} {} NE {:>6}  CPU {:8.2f} s  "
                             "gap {:.1e}\n",
                             inst.name, SolveStatusName(r.status), r.nodes,
                             r.cpu_seconds, r.gap);
  }
  o.detail = fmt::format("5 instances n=6, slowest {:.2f} s, limit {:.0f} s",
                         slowest, kCapacityLimitS);
  Report(7, "desk-scale capacity", o);
}

std::string StripTimes(const std::string& log) {
  static const std::regex stamp("  t=[0-9.]+s");
  return std::regex_replace(log, stamp, "");
}

void Criterion9() {
  Outcome o;
  std::vector<Instance> cases = {ToyInstance()};
  for (std::uint64_t seed : {3, 4}) {
    GeneratorParams p;
    p.n = 5;
    p.seed = seed;
    cases.push_back(GenerateInstance(p).instance);
  }
  for (const Instance& inst : cases) {
    SolveOptions opt = Options();
    opt.seed = 17;
    opt.log_interval = 1;
    const SolveResult a = Solve(inst, opt);
    const SolveResult b = Solve(inst, opt);
    const bool same =
        a.objective == b.objective && a.nodes == b.nodes &&
        a.incumbent.has_value() == b.incumbent.has_value() &&
        (!a.incumbent ||
         StoreSolution(*a.incumbent) == StoreSolution(*b.incumbent)) &&
        StripTimes(a.log) == StripTimes(b.log) && !a.log.empty();
    if (!same) o.pass = false;
  }
  o.detail = fmt::format("{} instances solved twice; objective, routes, NE "
                         "and log compared",
                         cases.size());
  Report(9, "determinism", o);
}

}  // namespace
}  // namespace pdpcd

int main() {
  using namespace pdpcd;
  const auto start = std::chrono::steady_clock::now();
  Criteria1248();
  Criterion3();
  Criterion5();
  Criterion6();
  Criterion7();
  Criterion9();
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  std::cout << fmt::format("acceptance: {} failed, {:.1f} s\n", failures,
                           seconds);
  return failures == 0 ? 0 : 1;
}
