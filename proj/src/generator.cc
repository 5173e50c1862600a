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

#include "pdpcd/generator.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/core.h>

namespace pdpcd {

namespace {

// std::uniform_int_distribution is not specified bit-for-bit across
// standard libraries, so the transforms are spelled out.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  int Int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[Int(0, i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Vehicle per request, every vehicle used, loads within capacity.
std::vector<int> DrawAssignment(Rng& rng, const GeneratorParams& p,
                                const std::vector<double>& demand) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> order(p.n);
    for (int i = 0; i < p.n; ++i) order[i] = i;
    rng.Shuffle(order);
    std::vector<int> vehicle(p.n);
    for (int s = 0; s < p.n; ++s) {
      vehicle[order[s]] = s < p.num_vehicles ? s : rng.Int(0, p.num_vehicles - 1);
    }
    std::vector<double> load(p.num_vehicles, 0.0);
    for (int i = 0; i < p.n; ++i) load[vehicle[i]] += demand[i];
    if (std::all_of(load.begin(), load.end(),
                    [&](double l) { return l <= p.capacity; })) {
      return vehicle;
    }
  }
  throw InstanceError(
      "could not draw a capacity-feasible assignment in 1000 attempts");
}

}  // namespace

GeneratedInstance GenerateInstance(const GeneratorParams& p) {
  if (p.num_vehicles < 1 || p.n < p.num_vehicles) {
    throw InstanceError(fmt::format(
        "need n >= vehicles >= 1, got n = {} and {} vehicles", p.n,
        p.num_vehicles));
  }
  if (p.demand_min < 0 || p.demand_min > p.demand_max) {
    throw InstanceError(fmt::format("invalid demand range [{}, {}]",
                                    p.demand_min, p.demand_max));
  }
  if (p.demand_min > p.capacity) {
    throw InstanceError(fmt::format(
        "minimum demand {} exceeds the vehicle capacity {}", p.demand_min,
        p.capacity));
  }
  if (p.box_size < 0 || p.window_slack < 0 || p.ride_factor < 1.0 ||
      p.duration_factor < 1.0 || p.fixed_time < 0 || p.per_unit_time < 0) {
    throw InstanceError(
        "box size, slack and handling times must be nonnegative and the "
        "ride/duration factors at least 1");
  }

  Rng rng(p.seed);
  Instance inst;
  inst.name = fmt::format("gen-n{}-k{}-s{}", p.n, p.num_vehicles, p.seed);
  inst.num_requests = p.n;
  const double center = std::floor(p.box_size / 2.0);
  inst.depot = Point{center, center};
  std::vector<double> demand(p.n);
  for (int i = 0; i < p.n; ++i) {
    Pickup pick;
    pick.id = i + 1;
    pick.position = Point{double(rng.Int(0, p.box_size)),
                          double(rng.Int(0, p.box_size))};
    pick.demand = rng.Int(p.demand_min, p.demand_max);
    demand[i] = pick.demand;
    inst.pickups.push_back(pick);
  }
  for (int i = 0; i < p.n; ++i) {
    Delivery drop;
    drop.id = p.n + i + 1;
    drop.position = Point{double(rng.Int(0, p.box_size)),
                          double(rng.Int(0, p.box_size))};
    inst.deliveries.push_back(drop);
  }
  inst.fixed_time = p.fixed_time;
  inst.per_unit_time = p.per_unit_time;
  inst.vehicles.assign(p.num_vehicles, Vehicle{p.capacity, 0.0});

  const std::vector<int> pick_vehicle = DrawAssignment(rng, p, demand);
  const std::vector<int> drop_vehicle = DrawAssignment(rng, p, demand);

  GeneratedInstance out;
  Solution& plan = out.plan;
  plan.vehicles.resize(p.num_vehicles);
  plan.requests.resize(p.n);
  for (int i = 0; i < p.n; ++i) {
    plan.vehicles[pick_vehicle[i]].pickup_route.push_back(i + 1);
    plan.vehicles[drop_vehicle[i]].delivery_route.push_back(p.n + i + 1);
  }
  for (VehicleRoute& r : plan.vehicles) {
    rng.Shuffle(r.pickup_route);
    rng.Shuffle(r.delivery_route);
  }

  // Earliest schedule: all vehicles leave at time 0.
  std::vector<double> u(2 * p.n + 1, 0.0);
  for (int k = 0; k < p.num_vehicles; ++k) {
    VehicleRoute& r = plan.vehicles[k];
    double t = 0.0;
    int prev = inst.o1();
    for (int v : r.pickup_route) {
      t += inst.TravelTime(prev, v);
      u[v] = t;
      prev = v;
    }
    r.start_time = 0.0;
    r.crossdock_arrival = t + inst.TravelTime(prev, inst.o2());
    double units = 0.0;
    for (int v : r.pickup_route) {
      if (drop_vehicle[v - 1] != k) {
        r.unloads = true;
        units += demand[v - 1];
      }
    }
    r.unload_end = r.crossdock_arrival + (r.unloads ? p.fixed_time : 0.0) +
                   p.per_unit_time * units;
  }
  for (int k = 0; k < p.num_vehicles; ++k) {
    VehicleRoute& r = plan.vehicles[k];
    r.reload_start = r.unload_end;
    double units = 0.0;
    for (int v : r.delivery_route) {
      const int i = v - p.n;
      const int from = pick_vehicle[i - 1];
      if (from != k) {
        r.reloads = true;
        units += demand[i - 1];
        r.reload_start =
            std::max(r.reload_start, plan.vehicles[from].unload_end);
      }
    }
    r.crossdock_departure = r.reload_start +
                            (r.reloads ? p.fixed_time : 0.0) +
                            p.per_unit_time * units;
    double t = r.crossdock_departure;
    int prev = inst.o3();
    for (int v : r.delivery_route) {
      t += inst.TravelTime(prev, v);
      u[v] = t;
      prev = v;
    }
    r.end_time = t + inst.TravelTime(prev, inst.o4());
  }

  double horizon = 0.0, longest_ride = 0.0, longest_leg = 0.0;
  for (const VehicleRoute& r : plan.vehicles) {
    horizon = std::max(horizon, r.end_time);
    longest_leg = std::max({longest_leg, r.crossdock_arrival - r.start_time,
                            r.end_time - r.crossdock_departure});
  }
  for (int i = 1; i <= p.n; ++i) {
    RequestRecord& rec = plan.requests[i - 1];
    rec.pickup_time = u[i];
    rec.delivery_time = u[p.n + i];
    rec.ride_time = u[p.n + i] - u[i];
    longest_ride = std::max(longest_ride, rec.ride_time);
    if (pick_vehicle[i - 1] != drop_vehicle[i - 1]) {
      rec.unloaded_by = pick_vehicle[i - 1];
      rec.reloaded_by = drop_vehicle[i - 1];
      rec.unload_time = plan.vehicles[pick_vehicle[i - 1]].unload_end;
    }
  }
  for (const VehicleRoute& r : plan.vehicles) {
    plan.cost += [&] {
      double c = 0.0;
      int prev = inst.o1();
      for (int v : r.pickup_route) c += inst.Cost(prev, v), prev = v;
      c += inst.Cost(prev, inst.o2());
      prev = inst.o3();
      for (int v : r.delivery_route) c += inst.Cost(prev, v), prev = v;
      return c + inst.Cost(prev, inst.o4());
    }();
  }

  const double slack = p.window_slack;
  for (int i = 0; i < p.n; ++i) {
    const double up = u[i + 1], ud = u[p.n + i + 1];
    inst.pickups[i].window = {std::max(0.0, std::floor(up - slack)),
                              std::ceil(up + slack)};
    inst.deliveries[i].window = {std::max(0.0, std::floor(ud - slack)),
                                 std::ceil(ud + slack)};
  }
  inst.depot_window = {0.0, std::ceil(horizon) + slack};
  inst.max_ride_time = std::ceil(p.ride_factor * longest_ride);
  const double duration = std::ceil(p.duration_factor * longest_leg);
  for (Vehicle& v : inst.vehicles) v.max_route_duration = duration;
  out.instance = std::move(inst);
  return out;
}

}  // namespace pdpcd
