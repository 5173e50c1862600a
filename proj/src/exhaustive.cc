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

#include "pdpcd/exhaustive.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>

#include <fmt/core.h>

#include "pdpcd/lp.h"

namespace pdpcd {

namespace {

using Config = std::vector<std::vector<int>>;  // one sequence per vehicle

// Every way to split `verts` into `num_k` non-empty ordered sequences.
std::vector<Config> Configurations(const std::vector<int>& verts, int num_k) {
  std::vector<Config> out;
  const int n = static_cast<int>(verts.size());
  if (num_k <= 0 || n < num_k) return out;
  std::vector<int> assign(n, 0);
  for (;;) {
    Config groups(num_k);
    for (int s = 0; s < n; ++s) groups[assign[s]].push_back(verts[s]);
    const bool all_used = std::none_of(
        groups.begin(), groups.end(),
        [](const std::vector<int>& g) { return g.empty(); });
    if (all_used) {
      // Cartesian product of the per-vehicle permutations, vehicle 0
      // outermost.
      std::function<void(int, Config&)> expand = [&](int k, Config& cur) {
        if (k == num_k) {
          out.push_back(cur);
          return;
        }
        std::vector<int> perm = groups[k];
        do {
          cur[k] = perm;
          expand(k + 1, cur);
        } while (std::next_permutation(perm.begin(), perm.end()));
      };
      Config cur(num_k);
      expand(0, cur);
    }
    int s = n - 1;
    while (s >= 0 && assign[s] == num_k - 1) assign[s--] = 0;
    if (s < 0) break;
    ++assign[s];
  }
  return out;
}

double SequenceCost(const Instance& instance, int start,
                    const std::vector<int>& seq, int end) {
  double cost = 0.0;
  int prev = start;
  for (int v : seq) {
    cost += instance.Cost(prev, v);
    prev = v;
  }
  return cost + instance.Cost(prev, end);
}

// Earliest-arrival propagation; false when some window is missed even when
// leaving the depot as early as possible. Also checks load.
bool QuickCheck(const Instance& instance, int start,
                const std::vector<int>& seq, int end, double capacity) {
  double load = 0.0;
  for (int v : seq) load += instance.Demand(v);
  if (load > capacity) return false;
  double t = instance.Window(start).earliest;
  int prev = start;
  for (int v : seq) {
    t = std::max(t + instance.TravelTime(prev, v), instance.Window(v).earliest);
    if (t > instance.Window(v).latest) return false;
    prev = v;
  }
  t += instance.TravelTime(prev, end);
  return t <= instance.Window(end).latest;
}

}  // namespace

std::uint64_t CountStructures(int n, int num_vehicles) {
  if (num_vehicles <= 0 || n < num_vehicles) return 0;
  std::uint64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  std::uint64_t binom = 1;  // C(n-1, K-1)
  for (int i = 1; i <= num_vehicles - 1; ++i) {
    binom = binom * (n - num_vehicles + i) / i;
  }
  const std::uint64_t side = fact * binom;
  return side * side;
}

std::vector<RouteStructure> EnumerateStructures(int n, int num_vehicles) {
  std::vector<int> pickups(n), deliveries(n);
  std::iota(pickups.begin(), pickups.end(), 1);
  std::iota(deliveries.begin(), deliveries.end(), n + 1);
  const auto pconf = Configurations(pickups, num_vehicles);
  const auto dconf = Configurations(deliveries, num_vehicles);
  std::vector<RouteStructure> out;
  out.reserve(pconf.size() * dconf.size());
  for (const Config& p : pconf) {
    for (const Config& d : dconf) {
      RouteStructure s;
      s.vehicles.resize(num_vehicles);
      for (int k = 0; k < num_vehicles; ++k) {
        s.vehicles[k].pickups = p[k];
        s.vehicles[k].deliveries = d[k];
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::optional<Solution> ScheduleFeasible(const Instance& instance,
                                         const RouteStructure& structure) {
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  const double e0 = instance.depot_window.earliest;
  const double l0 = instance.depot_window.latest;
  std::vector<int> picked_by(n + 1, -1), delivered_by(n + 1, -1);
  for (int k = 0; k < num_k; ++k) {
    for (int v : structure.vehicles[k].pickups) picked_by[v] = k;
    for (int v : structure.vehicles[k].deliveries) delivered_by[v - n] = k;
  }

  LinearProgram lp;
  std::vector<int> u(2 * n + 1, -1);
  for (int v = 1; v <= 2 * n; ++v) {
    const TimeWindow tw = instance.Window(v);
    u[v] = lp.AddColumn(tw.earliest, tw.latest, 1.0);
  }
  struct VehicleCols {
    int o1, o2, o3, o4, tau, w;
  };
  std::vector<VehicleCols> cols(num_k);
  for (int k = 0; k < num_k; ++k) {
    cols[k] = {lp.AddColumn(e0, l0, 1.0), lp.AddColumn(e0, l0, 1.0),
               lp.AddColumn(e0, l0, 1.0), lp.AddColumn(e0, l0, 1.0),
               lp.AddColumn(e0, l0, 1.0), lp.AddColumn(e0, l0, 1.0)};
  }
  std::vector<int> z(n + 1, -1);
  for (int i = 1; i <= n; ++i) {
    if (picked_by[i] != delivered_by[i]) z[i] = lp.AddColumn(e0, l0, 1.0);
  }

  using Entries = std::vector<std::pair<int, double>>;
  auto precedes = [&](int before, int after, double gap) {
    // after - before >= gap
    const Entries e{{after, 1.0}, {before, -1.0}};
    lp.AddRow(e, gap, kInfinity);
  };
  for (int k = 0; k < num_k; ++k) {
    const VehicleSequences& seq = structure.vehicles[k];
    const VehicleCols& c = cols[k];
    auto chain = [&](int start_col, int start_v, const std::vector<int>& vs,
                     int end_col, int end_v) {
      int prev_col = start_col, prev_v = start_v;
      for (int v : vs) {
        precedes(prev_col, u[v], instance.TravelTime(prev_v, v));
        prev_col = u[v];
        prev_v = v;
      }
      precedes(prev_col, end_col, instance.TravelTime(prev_v, end_v));
    };
    chain(c.o1, instance.o1(), seq.pickups, c.o2, instance.o2());
    chain(c.o3, instance.o3(), seq.deliveries, c.o4, instance.o4());

    double unload_units = 0.0, reload_units = 0.0;
    bool unloads = false, reloads = false;
    for (int i = 1; i <= n; ++i) {
      if (picked_by[i] == k && delivered_by[i] != k) {
        unloads = true;
        unload_units += instance.Demand(i);
      }
      if (delivered_by[i] == k && picked_by[i] != k) {
        reloads = true;
        reload_units += instance.Demand(i);
      }
    }
    const double unload_time = (unloads ? instance.fixed_time : 0.0) +
                               instance.per_unit_time * unload_units;
    const double reload_time = (reloads ? instance.fixed_time : 0.0) +
                               instance.per_unit_time * reload_units;
    const Entries tau_row{{c.tau, 1.0}, {c.o2, -1.0}};
    lp.AddRow(tau_row, unload_time, unload_time);
    precedes(c.tau, c.w, 0.0);
    const Entries dep_row{{c.o3, 1.0}, {c.w, -1.0}};
    lp.AddRow(dep_row, reload_time, reload_time);
    const double limit = instance.vehicles[k].max_route_duration;
    const Entries pick_dur{{c.o2, 1.0}, {c.o1, -1.0}};
    lp.AddRow(pick_dur, -kInfinity, limit);
    const Entries drop_dur{{c.o4, 1.0}, {c.o3, -1.0}};
    lp.AddRow(drop_dur, -kInfinity, limit);
  }
  for (int i = 1; i <= n; ++i) {
    if (z[i] >= 0) {
      precedes(cols[picked_by[i]].tau, z[i], 0.0);
      precedes(z[i], cols[delivered_by[i]].w, 0.0);
    }
    const Entries ride{{u[n + i], 1.0}, {u[i], -1.0}};
    lp.AddRow(ride, -kInfinity, instance.max_ride_time);
  }

  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  const std::vector<double>& x = sol.values;

  Solution out;
  out.vehicles.resize(num_k);
  for (int k = 0; k < num_k; ++k) {
    VehicleRoute& r = out.vehicles[k];
    const VehicleCols& c = cols[k];
    r.pickup_route = structure.vehicles[k].pickups;
    r.delivery_route = structure.vehicles[k].deliveries;
    r.start_time = x[c.o1];
    r.crossdock_arrival = x[c.o2];
    r.crossdock_departure = x[c.o3];
    r.end_time = x[c.o4];
    r.unload_end = x[c.tau];
    r.reload_start = x[c.w];
    out.cost += SequenceCost(instance, instance.o1(), r.pickup_route,
                             instance.o2());
    out.cost += SequenceCost(instance, instance.o3(), r.delivery_route,
                             instance.o4());
  }
  out.requests.resize(n);
  for (int i = 1; i <= n; ++i) {
    RequestRecord& rec = out.requests[i - 1];
    rec.pickup_time = x[u[i]];
    rec.delivery_time = x[u[n + i]];
    rec.ride_time = *rec.delivery_time - *rec.pickup_time;
    if (z[i] >= 0) {
      rec.unloaded_by = picked_by[i];
      rec.reloaded_by = delivered_by[i];
      rec.unload_time = x[z[i]];
      out.vehicles[picked_by[i]].unloads = true;
      out.vehicles[delivered_by[i]].reloads = true;
    }
  }
  return out;
}

SolveResult BruteForceSolve(const Instance& instance, OracleStats* stats) {
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  if (n > kMaxOracleRequests) {
    throw OracleRefused(
        fmt::format("brute force is limited to {} requests, instance has {}",
                    kMaxOracleRequests, n));
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> pickups(n), deliveries(n);
  std::iota(pickups.begin(), pickups.end(), 1);
  std::iota(deliveries.begin(), deliveries.end(), n + 1);
  const auto pconf = Configurations(pickups, num_k);
  const auto dconf = Configurations(deliveries, num_k);

  // Per-side filtering and cost.
  auto side = [&](const std::vector<Config>& confs, bool pickup_side) {
    std::vector<std::pair<int, double>> kept;
    const int from = pickup_side ? instance.o1() : instance.o3();
    const int to = pickup_side ? instance.o2() : instance.o4();
    for (int c = 0; c < static_cast<int>(confs.size()); ++c) {
      bool ok = true;
      double cost = 0.0;
      for (int k = 0; k < num_k && ok; ++k) {
        ok = QuickCheck(instance, from, confs[c][k], to,
                        instance.vehicles[k].capacity);
        cost += SequenceCost(instance, from, confs[c][k], to);
      }
      if (ok) kept.emplace_back(c, cost);
    }
    return kept;
  };
  const auto pk = side(pconf, true);
  const auto dk = side(dconf, false);

  struct Candidate {
    double cost;
    std::size_t order;  // enumeration order, for ties
    int p, d;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(pk.size() * dk.size());
  for (const auto& [p, pc] : pk) {
    for (const auto& [d, dc] : dk) {
      candidates.push_back(
          {pc + dc, static_cast<std::size_t>(p) * dconf.size() + d, p, d});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              return a.order < b.order;
            });

  SolveResult result;
  OracleStats local;
  local.structures = static_cast<std::uint64_t>(pconf.size()) * dconf.size();
  for (const Candidate& cand : candidates) {
    RouteStructure s;
    s.vehicles.resize(num_k);
    for (int k = 0; k < num_k; ++k) {
      s.vehicles[k].pickups = pconf[cand.p][k];
      s.vehicles[k].deliveries = dconf[cand.d][k];
    }
    ++local.schedules_checked;
    if (auto sol = ScheduleFeasible(instance, s)) {
      result.incumbent = std::move(sol);
      break;
    }
  }
  if (result.incumbent) {
    result.status = SolveStatus::kOptimal;
    result.objective = result.incumbent->cost;
    result.bound = result.objective;
    result.gap = 0.0;
  } else {
    result.status = SolveStatus::kInfeasible;
    result.objective = kInfinity;
    result.bound = kInfinity;
    result.gap = kInfinity;
    result.reason = local.structures == 0
                        ? "no route structure gives every vehicle a pickup "
                          "and a delivery"
                        : "no route structure has a feasible schedule";
  }
  result.nodes = static_cast<long>(local.schedules_checked);
  result.cpu_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  if (stats != nullptr) *stats = local;
  return result;
}

}  // namespace pdpcd
