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

#include "pdpcd/validator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/core.h>

#include "json.hpp"

namespace pdpcd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool IsArc(const Instance& instance, int from, int to) {
  const int nv = instance.num_vertices();
  if (from < 0 || from >= nv || to < 0 || to >= nv) return false;
  if (from == to) return false;
  if (from == instance.o1()) return instance.IsPickup(to);
  if (instance.IsPickup(from)) {
    return instance.IsPickup(to) || to == instance.o2();
  }
  if (from == instance.o3()) return instance.IsDelivery(to);
  if (instance.IsDelivery(from)) {
    return instance.IsDelivery(to) || to == instance.o4();
  }
  return false;
}

// Full vertex sequence of one route including the depot copies.
std::vector<int> Path(int start, const std::vector<int>& inner, int end) {
  std::vector<int> path{start};
  path.insert(path.end(), inner.begin(), inner.end());
  path.push_back(end);
  return path;
}

void CheckDimensions(const Instance& instance, const Solution& solution) {
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  if (static_cast<int>(solution.vehicles.size()) != num_k) {
    throw ValidationError(fmt::format("solution has {} vehicles, instance {}",
                                      solution.vehicles.size(), num_k));
  }
  if (static_cast<int>(solution.requests.size()) != n) {
    throw ValidationError(fmt::format("solution has {} requests, instance {}",
                                      solution.requests.size(), n));
  }
  for (int k = 0; k < num_k; ++k) {
    const VehicleRoute& r = solution.vehicles[k];
    for (const auto* route : {&r.pickup_route, &r.delivery_route}) {
      for (int v : *route) {
        if (v < 1 || v > 2 * n) {
          throw ValidationError(fmt::format(
              "vehicle {} route references unknown vertex {}", k, v));
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const RequestRecord& rec = solution.requests[i];
    for (const auto& by : {rec.unloaded_by, rec.reloaded_by}) {
      if (by && (*by < 0 || *by >= num_k)) {
        throw ValidationError(fmt::format(
            "request {} references unknown vehicle {}", i + 1, *by));
      }
    }
  }
}

std::optional<double> ServiceTime(const Instance& instance,
                                  const Solution& solution, int v) {
  if (instance.IsPickup(v)) return solution.requests[v - 1].pickup_time;
  return solution.requests[v - instance.n() - 1].delivery_time;
}

class Checker {
 public:
  Checker() {
    for (const std::string& name : ValidatedFamilies()) {
      report_.families.push_back({name, {}});
    }
  }

  void Ge(const std::string& family, std::string entity, double lhs,
          double rhs) {
    if (!(lhs >= rhs - kTimeTolerance)) {
      Add(family, {std::move(entity), lhs, rhs, lhs - rhs});
    }
  }
  void Le(const std::string& family, std::string entity, double lhs,
          double rhs) {
    if (!(lhs <= rhs + kTimeTolerance)) {
      Add(family, {std::move(entity), lhs, rhs, rhs - lhs});
    }
  }
  void Eq(const std::string& family, std::string entity, double lhs,
          double rhs) {
    if (!(std::abs(lhs - rhs) <= kTimeTolerance)) {
      Add(family, {std::move(entity), lhs, rhs, -std::abs(lhs - rhs)});
    }
  }
  void Add(const std::string& family, Violation v) {
    for (FamilyResult& f : report_.families) {
      if (f.family == family) {
        f.violations.push_back(std::move(v));
        return;
      }
    }
  }

  ValidationReport& report() { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace

const std::vector<std::string>& ValidatedFamilies() {
  static const std::vector<std::string> kFamilies = {
      "eq2",  "eq3",  "eq4",  "eq5",  "eq6",  "eq7",  "eq8",
      "eq9",  "eq10", "eq11", "eq12", "eq13", "eq14", "eq15",
      "eq16", "eq17", "eq18", "eq19", "eq20", "eq21", "eq22"};
  return kFamilies;
}

bool ValidationReport::passed() const {
  if (!cost_matches) return false;
  return std::all_of(families.begin(), families.end(),
                     [](const FamilyResult& f) { return f.passed(); });
}

const FamilyResult* ValidationReport::Family(std::string_view name) const {
  for (const FamilyResult& f : families) {
    if (f.family == name) return &f;
  }
  return nullptr;
}

int ValidationReport::num_violations() const {
  int total = 0;
  for (const FamilyResult& f : families) {
    total += static_cast<int>(f.violations.size());
  }
  return total;
}

std::string ValidationReport::ToJson() const {
  using nlohmann::json;
  auto number = [](double v) { return std::isfinite(v) ? json(v) : json(); };
  json doc;
  doc["passed"] = passed();
  doc["stored_cost"] = number(stored_cost);
  doc["recomputed_cost"] = number(recomputed_cost);
  doc["cost_matches"] = cost_matches;
  json rides = json::array();
  for (double r : ride_times) rides.push_back(number(r));
  doc["ride_times"] = std::move(rides);
  json fams = json::object();
  for (const FamilyResult& f : families) {
    json item;
    item["passed"] = f.passed();
    json list = json::array();
    for (const Violation& v : f.violations) {
      list.push_back({{"entity", v.entity},
                      {"lhs", number(v.lhs)},
                      {"rhs", number(v.rhs)},
                      {"slack", number(v.slack)}});
    }
    item["violations"] = std::move(list);
    fams[f.family] = std::move(item);
  }
  doc["families"] = std::move(fams);
  return doc.dump(2) + "\n";
}

std::vector<double> ComputeRideTimes(const Instance& instance,
                                     const Solution& solution) {
  const int n = instance.n();
  if (static_cast<int>(solution.requests.size()) != n) {
    throw ValidationError(fmt::format("solution has {} requests, instance {}",
                                      solution.requests.size(), n));
  }
  std::vector<double> rides(n);
  for (int i = 0; i < n; ++i) {
    const RequestRecord& rec = solution.requests[i];
    if (!rec.pickup_time || !rec.delivery_time) {
      throw ValidationError(
          fmt::format("request {} has no service time at {}", i + 1,
                      rec.pickup_time ? "its delivery" : "its pickup"));
    }
    rides[i] = *rec.delivery_time - *rec.pickup_time;
  }
  return rides;
}

double EvaluateCost(const Instance& instance, const Solution& solution) {
  double cost = 0.0;
  for (std::size_t k = 0; k < solution.vehicles.size(); ++k) {
    const VehicleRoute& r = solution.vehicles[k];
    for (const auto& path :
         {Path(instance.o1(), r.pickup_route, instance.o2()),
          Path(instance.o3(), r.delivery_route, instance.o4())}) {
      for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        if (!IsArc(instance, path[s], path[s + 1])) {
          throw ValidationError(fmt::format(
              "vehicle {} travels ({}, {}), which is not an arc", k,
              instance.VertexName(path[s]), instance.VertexName(path[s + 1])));
        }
        cost += instance.Cost(path[s], path[s + 1]);
      }
    }
  }
  return cost;
}

ValidationReport Validate(const Instance& instance, const Solution& solution) {
  CheckDimensions(instance, solution);
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  Checker check;

  // Visit counts and serving vehicles.
  std::vector<int> visits(2 * n + 1, 0);
  std::vector<int> picked_by(n + 1, -1), delivered_by(n + 1, -1);
  for (int k = 0; k < num_k; ++k) {
    const VehicleRoute& r = solution.vehicles[k];
    for (int v : r.pickup_route) {
      ++visits[v];
      if (instance.IsPickup(v)) picked_by[v] = k;
    }
    for (int v : r.delivery_route) {
      ++visits[v];
      if (instance.IsDelivery(v)) delivered_by[v - n] = k;
    }
  }
  for (int v = 1; v <= 2 * n; ++v) {
    if (visits[v] != 1) {
      check.Add("eq2", {fmt::format("vertex {}", v), double(visits[v]), 1.0,
                        -std::abs(visits[v] - 1.0)});
    }
    if (visits[v] > 0 && !ServiceTime(instance, solution, v)) {
      throw ValidationError(
          fmt::format("vertex {} is visited but has no service time", v));
    }
  }

  for (int k = 0; k < num_k; ++k) {
    const VehicleRoute& r = solution.vehicles[k];
    const std::string veh = fmt::format("vehicle {}", k + 1);
    const double cap = instance.vehicles[k].capacity;
    double pick_load = 0.0, drop_load = 0.0;
    for (int v : r.pickup_route) pick_load += instance.Demand(v);
    for (int v : r.delivery_route) drop_load += instance.Demand(v);
    check.Le("eq3", veh, pick_load, cap);
    check.Le("eq4", veh, drop_load, cap);

    // Start and end structure: o1 -> P ... and o3 -> D ..., closing into
    // o2 and o4.
    auto starts_ok = [&](const std::vector<int>& route, bool pickups) {
      return !route.empty() && (pickups ? instance.IsPickup(route.front())
                                        : instance.IsDelivery(route.front()));
    };
    auto ends_ok = [&](const std::vector<int>& route, bool pickups) {
      return !route.empty() && (pickups ? instance.IsPickup(route.back())
                                        : instance.IsDelivery(route.back()));
    };
    if (!starts_ok(r.pickup_route, true)) {
      check.Add("eq5", {veh + " pickup route start", 0.0, 1.0, -1.0});
    }
    if (!starts_ok(r.delivery_route, false)) {
      check.Add("eq5", {veh + " delivery route start", 0.0, 1.0, -1.0});
    }
    if (!ends_ok(r.pickup_route, true)) {
      check.Add("eq6", {veh + " pickup route end", 0.0, 1.0, -1.0});
    }
    if (!ends_ok(r.delivery_route, false)) {
      check.Add("eq6", {veh + " delivery route end", 0.0, 1.0, -1.0});
    }

    auto time_of = [&](int v) -> double {
      if (v == instance.o1()) return r.start_time;
      if (v == instance.o2()) return r.crossdock_arrival;
      if (v == instance.o3()) return r.crossdock_departure;
      if (v == instance.o4()) return r.end_time;
      return ServiceTime(instance, solution, v).value_or(kNaN);
    };
    for (const auto& path :
         {Path(instance.o1(), r.pickup_route, instance.o2()),
          Path(instance.o3(), r.delivery_route, instance.o4())}) {
      std::vector<int> seen;
      for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const int from = path[s], to = path[s + 1];
        const std::string arc = fmt::format("{} arc ({}, {})", veh,
                                            instance.VertexName(from),
                                            instance.VertexName(to));
        if (!IsArc(instance, from, to)) {
          check.Add("eq7", {arc + " is not an arc", 0.0, 1.0, -1.0});
          continue;
        }
        if (std::find(seen.begin(), seen.end(), to) != seen.end()) {
          check.Add("eq7", {arc + " revisits a vertex", 0.0, 1.0, -1.0});
        }
        seen.push_back(to);
        check.Ge("eq8", arc, time_of(to),
                 time_of(from) + instance.TravelTime(from, to));
      }
      for (int v : path) {
        const TimeWindow tw = instance.Window(v);
        const std::string who =
            fmt::format("{} at {}", veh, instance.VertexName(v));
        check.Ge("eq9", who, time_of(v), tw.earliest);
        check.Le("eq9", who, time_of(v), tw.latest);
      }
    }

    // Transfers handled by this vehicle.
    double unloaded = 0.0, reloaded = 0.0;
    bool any_unload = false, any_reload = false;
    for (int i = 1; i <= n; ++i) {
      const RequestRecord& rec = solution.requests[i - 1];
      const double eta = rec.unloaded_by == k ? 1.0 : 0.0;
      const double theta = rec.reloaded_by == k ? 1.0 : 0.0;
      const double picked = picked_by[i] == k ? 1.0 : 0.0;
      const double delivered = delivered_by[i] == k ? 1.0 : 0.0;
      const std::string who = fmt::format("{} request {}", veh, i);
      check.Eq("eq10", who, eta - theta, picked - delivered);
      check.Le("eq11", who, eta + theta, 1.0);
      check.Le("eq12", who, eta, r.unloads ? 1.0 : 0.0);
      check.Le("eq13", who, theta, r.reloads ? 1.0 : 0.0);
      unloaded += eta * instance.Demand(i);
      reloaded += theta * instance.Demand(i);
      any_unload = any_unload || eta > 0.0;
      any_reload = any_reload || theta > 0.0;
      if (eta > 0.0) {
        if (rec.unload_time) {
          check.Ge("eq18", who, *rec.unload_time, r.unload_end);
        } else {
          check.Add("eq18", {who + " has no unload time", kNaN, r.unload_end,
                             kNaN});
        }
      }
      if (theta > 0.0) {
        if (rec.unload_time) {
          check.Ge("eq17", who, r.reload_start, *rec.unload_time);
        } else {
          check.Add("eq17", {who + " has no unload time", r.reload_start,
                             kNaN, kNaN});
        }
      }
    }
    if (r.unloads && !any_unload) {
      check.Add("eq12", {veh + " unloads nothing", 1.0, 0.0, -1.0});
    }
    if (r.reloads && !any_reload) {
      check.Add("eq13", {veh + " reloads nothing", 1.0, 0.0, -1.0});
    }
    const double a = instance.fixed_time;
    const double beta = instance.per_unit_time;
    check.Eq("eq14", veh, r.unload_end,
             r.crossdock_arrival + (r.unloads ? a : 0.0) + beta * unloaded);
    check.Ge("eq15", veh, r.reload_start, r.unload_end);
    check.Eq("eq16", veh, r.crossdock_departure,
             r.reload_start + (r.reloads ? a : 0.0) + beta * reloaded);
    const double limit = instance.vehicles[k].max_route_duration;
    check.Le("eq19", veh, r.crossdock_arrival - r.start_time, limit);
    check.Le("eq20", veh, r.end_time - r.crossdock_departure, limit);
  }

  ValidationReport& report = check.report();
  report.ride_times.assign(n, kNaN);
  for (int i = 1; i <= n; ++i) {
    const RequestRecord& rec = solution.requests[i - 1];
    if (!rec.pickup_time || !rec.delivery_time) continue;
    const double ride = *rec.delivery_time - *rec.pickup_time;
    report.ride_times[i - 1] = ride;
    const std::string who = fmt::format("request {}", i);
    check.Eq("eq21", who, rec.ride_time, ride);
    check.Le("eq22", who, ride, instance.max_ride_time);
  }

  report.stored_cost = solution.cost;
  try {
    report.recomputed_cost = EvaluateCost(instance, solution);
  } catch (const ValidationError&) {
    report.recomputed_cost = kNaN;
  }
  report.cost_matches =
      std::abs(report.stored_cost - report.recomputed_cost) <=
      kCostTolerance * std::max(1.0, std::abs(report.recomputed_cost));
  return report;
}

std::string FormatRouteTable(const Instance& instance,
                             const Solution& solution) {
  const int n = instance.n();
  std::string out =
      fmt::format("{:<8} {:<9} {:<36} {:>10} {:>10} {:>10}\n", "vehicle",
                  "leg", "route", "time", "cost", "duration");
  double total = 0.0;
  bool total_ok = true;
  for (std::size_t k = 0; k < solution.vehicles.size(); ++k) {
    const VehicleRoute& r = solution.vehicles[k];
    struct Leg {
      const char* name;
      std::vector<int> path;
      double duration;
    };
    const Leg legs[] = {
        {"pickup", Path(instance.o1(), r.pickup_route, instance.o2()),
         r.crossdock_arrival - r.start_time},
        {"delivery", Path(instance.o3(), r.delivery_route, instance.o4()),
         r.end_time - r.crossdock_departure}};
    for (const Leg& leg : legs) {
      std::string text;
      double time = 0.0, cost = 0.0;
      bool ok = true;
      for (std::size_t s = 0; s < leg.path.size(); ++s) {
        if (s > 0) {
          text += " -> ";
          if (IsArc(instance, leg.path[s - 1], leg.path[s])) {
            time += instance.TravelTime(leg.path[s - 1], leg.path[s]);
            cost += instance.Cost(leg.path[s - 1], leg.path[s]);
          } else {
            ok = false;
          }
        }
        text += instance.VertexName(leg.path[s]);
      }
      total += cost;
      total_ok = total_ok && ok;
      out += fmt::format(
          "{:<8} {:<9} {:<36} {:>10} {:>10} {:>10.3f}\n", k + 1, leg.name,
          text, ok ? fmt::format("{:.3f}", time) : std::string("n/a"),
          ok ? fmt::format("{:.3f}", cost) : std::string("n/a"), leg.duration);
    }
  }
  out += fmt::format("\n{:<8} {:>10} {:>10}\n", "vertex", "u", "r");
  for (int v = 1; v <= 2 * n; ++v) {
    const RequestRecord& rec =
        solution.requests[instance.IsPickup(v) ? v - 1 : v - n - 1];
    const auto u = instance.IsPickup(v) ? rec.pickup_time : rec.delivery_time;
    out += fmt::format("{:<8} {:>10} {:>10}\n", v,
                       u ? fmt::format("{:.3f}", *u) : std::string("-"),
                       instance.IsPickup(v) ? fmt::format("{:.3f}",
                                                          rec.ride_time)
                                            : std::string(""));
  }
  out += fmt::format("\ntotal travel cost: {}\n",
                     total_ok ? fmt::format("{:.3f}", total)
                              : std::string("n/a"));
  return out;
}

std::string FormatReport(const Instance& instance, const Solution& solution,
                         const ValidationReport& report) {
  std::string out = FormatRouteTable(instance, solution);
  out += fmt::format("\n{:<8} {:<6} {}\n", "family", "result", "violations");
  for (const FamilyResult& f : report.families) {
    out += fmt::format("{:<8} {:<6} {}\n", f.family,
                       f.passed() ? "pass" : "FAIL", f.violations.size());
    for (const Violation& v : f.violations) {
      out += fmt::format("  {}: lhs {:.6f} rhs {:.6f} slack {:.6f}\n",
                         v.entity, v.lhs, v.rhs, v.slack);
    }
  }
  out += fmt::format("cost: stored {:.3f} recomputed {:.3f} {}\n",
                     report.stored_cost, report.recomputed_cost,
                     report.cost_matches ? "match" : "MISMATCH");
  out += fmt::format("verdict: {}\n", report.passed() ? "PASS" : "FAIL");
  return out;
}

}  // namespace pdpcd
