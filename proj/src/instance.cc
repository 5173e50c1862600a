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

#include "pdpcd/instance.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "json.hpp"

namespace pdpcd {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double MatrixEntry(const Matrix& m, int from, int to) {
  if (from >= static_cast<int>(m.size())) return kNaN;
  const auto& row = m[from];
  if (to >= static_cast<int>(row.size())) return kNaN;
  return row[to];
}

}  // namespace

double Instance::Demand(int v) const {
  if (IsPickup(v)) return pickups[v - 1].demand;
  if (IsDelivery(v)) return pickups[v - num_requests - 1].demand;
  return 0.0;
}

TimeWindow Instance::Window(int v) const {
  if (IsPickup(v)) return pickups[v - 1].window;
  if (IsDelivery(v)) return deliveries[v - num_requests - 1].window;
  return depot_window;
}

std::optional<Point> Instance::Position(int v) const {
  if (IsPickup(v)) return pickups[v - 1].position;
  if (IsDelivery(v)) return deliveries[v - num_requests - 1].position;
  return depot;
}

double Instance::TravelTime(int from, int to) const {
  const int a = Location(from);
  const int b = Location(to);
  if (travel_time_matrix) return MatrixEntry(*travel_time_matrix, a, b);
  if (a == b) return 0.0;
  const auto p = Position(from);
  const auto q = Position(to);
  if (!p || !q) return kNaN;
  return std::hypot(p->x - q->x, p->y - q->y);
}

double Instance::Cost(int from, int to) const {
  if (cost_matrix) {
    return MatrixEntry(*cost_matrix, Location(from), Location(to));
  }
  return TravelTime(from, to);
}

std::string Instance::VertexName(int v) const {
  if (v == o1()) return "o1";
  if (v == o2()) return "o2";
  if (v == o3()) return "o3";
  if (v == o4()) return "o4";
  return std::to_string(v);
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) return true;
  }
  return false;
}

std::vector<Diagnostic> ValidateInstance(const Instance& instance) {
  std::vector<Diagnostic> out;
  auto error = [&out](std::string msg) {
    out.push_back({Severity::kError, std::move(msg)});
  };
  auto warning = [&out](std::string msg) {
    out.push_back({Severity::kWarning, std::move(msg)});
  };
  auto nonneg = [&](double value, const char* what) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      error(fmt::format("{} must be finite and nonnegative (got {})", what,
                        value));
    }
  };

  const int n = instance.num_requests;
  if (n < 0) {
    error(fmt::format("negative request count {}", n));
    return out;
  }
  if (static_cast<int>(instance.pickups.size()) != n ||
      static_cast<int>(instance.deliveries.size()) != n) {
    error(fmt::format("request count {} does not match {} pickups / {} "
                      "deliveries",
                      n, instance.pickups.size(), instance.deliveries.size()));
    return out;
  }
  if (instance.vehicles.empty()) error("no vehicles");

  auto check_window = [&](const TimeWindow& w, const std::string& who) {
    if (!std::isfinite(w.earliest) || !std::isfinite(w.latest)) {
      error(fmt::format("time window of {} is not finite", who));
    } else if (w.earliest > w.latest) {
      error(fmt::format("time window of {} has e > l ({} > {})", who,
                        w.earliest, w.latest));
    }
  };
  check_window(instance.depot_window, "depot");
  for (int i = 0; i < n; ++i) {
    const Pickup& p = instance.pickups[i];
    if (p.id != i + 1) {
      error(fmt::format("pickup at position {} has id {}, expected {}", i,
                        p.id, i + 1));
    }
    if (p.demand < 0.0) {
      error(fmt::format("negative demand {} for request {}", p.demand, i + 1));
    } else if (!std::isfinite(p.demand)) {
      error(fmt::format("demand of request {} is not finite", i + 1));
    }
    check_window(p.window, fmt::format("pickup {}", i + 1));
    const Delivery& d = instance.deliveries[i];
    if (d.id != n + i + 1) {
      error(fmt::format("delivery at position {} has id {}, expected {}", i,
                        d.id, n + i + 1));
    }
    check_window(d.window, fmt::format("delivery {}", n + i + 1));
  }
  for (std::size_t k = 0; k < instance.vehicles.size(); ++k) {
    nonneg(instance.vehicles[k].capacity,
           fmt::format("capacity of vehicle {}", k).c_str());
    nonneg(instance.vehicles[k].max_route_duration,
           fmt::format("max route duration of vehicle {}", k).c_str());
  }
  nonneg(instance.fixed_time, "crossdock fixed time");
  nonneg(instance.per_unit_time, "crossdock per-unit time");
  nonneg(instance.max_ride_time, "max ride time");

  const std::size_t size = 2 * static_cast<std::size_t>(n) + 1;
  auto check_matrix = [&](const std::optional<Matrix>& m, const char* what) {
    if (!m) return;
    if (m->size() != size) {
      error(fmt::format("{} has {} rows, expected {}", what, m->size(), size));
      return;
    }
    for (std::size_t r = 0; r < size; ++r) {
      if ((*m)[r].size() != size) {
        error(fmt::format("{} row {} has {} entries, expected {}", what, r,
                          (*m)[r].size(), size));
        return;
      }
      for (double v : (*m)[r]) {
        if (!std::isnan(v) && (v < 0.0 || !std::isfinite(v))) {
          error(fmt::format("{} row {} holds invalid entry {}", what, r, v));
          return;
        }
      }
    }
  };
  check_matrix(instance.travel_time_matrix, "travel_time_matrix");
  check_matrix(instance.cost_matrix, "cost_matrix");

  if (!instance.travel_time_matrix) {
    bool all = instance.depot.has_value();
    for (const auto& p : instance.pickups) all = all && p.position.has_value();
    for (const auto& d : instance.deliveries) {
      all = all && d.position.has_value();
    }
    if (!all) error("coordinates missing and no travel_time_matrix given");
  }

  if (HasErrors(out)) return out;

  if (n < instance.num_vehicles()) {
    warning(
        "more vehicles than requests: model infeasible by arc-set structure");
  }
  double total_demand = 0.0;
  double total_capacity = 0.0;
  double max_capacity = 0.0;
  for (const auto& p : instance.pickups) total_demand += p.demand;
  for (const auto& v : instance.vehicles) {
    total_capacity += v.capacity;
    max_capacity = std::max(max_capacity, v.capacity);
  }
  if (total_demand > total_capacity) {
    warning(fmt::format("total demand {} exceeds total capacity {}",
                        total_demand, total_capacity));
  }
  for (const auto& p : instance.pickups) {
    if (p.demand > max_capacity) {
      warning(fmt::format("demand of request {} exceeds every capacity", p.id));
    }
  }
  return out;
}

// --- JSON ---------------------------------------------------------------

namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw InstanceError(fmt::format("{}: {}", path, what));
}

void RejectUnknown(const json& obj, const std::string& path,
                   std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) Fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) known = true;
    }
    if (!known) Fail(path + "." + item.key(), "unknown field");
  }
}

const json& Field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path + "." + key, "missing field");
  return *it;
}

double Number(const json& obj, const std::string& path, const char* key) {
  const json& v = Field(obj, path, key);
  if (!v.is_number()) Fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int Integer(const json& obj, const std::string& path, const char* key) {
  const json& v = Field(obj, path, key);
  if (!v.is_number_integer()) Fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

TimeWindow ParseWindow(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    Fail(path, "expected [earliest, latest]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::optional<Point> ParsePosition(const json& obj, const std::string& path) {
  const bool has_x = obj.contains("x");
  const bool has_y = obj.contains("y");
  if (!has_x && !has_y) return std::nullopt;
  return Point{Number(obj, path, "x"), Number(obj, path, "y")};
}

Matrix ParseMatrix(const json& v, const std::string& path, std::size_t size) {
  if (!v.is_array()) Fail(path, "expected an array of rows");
  if (v.size() != size) {
    Fail(path, fmt::format("inconsistent dimensions: {} rows, expected 2n+1 "
                           "= {}",
                           v.size(), size));
  }
  Matrix m(size);
  for (std::size_t r = 0; r < size; ++r) {
    const std::string row_path = fmt::format("{}[{}]", path, r);
    const json& row = v[r];
    if (!row.is_array() || row.size() != size) {
      Fail(row_path, fmt::format("inconsistent dimensions: expected {} "
                                 "entries",
                                 size));
    }
    m[r].resize(size);
    for (std::size_t c = 0; c < size; ++c) {
      if (row[c].is_null()) {
        m[r][c] = kNaN;
      } else if (row[c].is_number()) {
        m[r][c] = row[c].get<double>();
      } else {
        Fail(fmt::format("{}[{}]", row_path, c), "expected a number or null");
      }
    }
  }
  return m;
}

json WindowJson(const TimeWindow& w) { return json::array({w.earliest, w.latest}); }

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (double v : r) {
      if (std::isnan(v)) {
        row.push_back(nullptr);
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Instance LoadInstance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InstanceError(fmt::format("parse error: {}", e.what()));
  }
  const std::string root = "$";
  RejectUnknown(doc, root,
                {"name", "num_requests", "depot", "pickups", "deliveries",
                 "vehicles", "depot_window", "crossdock", "max_ride_time",
                 "travel_time_matrix", "cost_matrix"});

  Instance inst;
  const json& name = Field(doc, root, "name");
  if (!name.is_string()) Fail("$.name", "expected a string");
  inst.name = name.get<std::string>();
  inst.num_requests = Integer(doc, root, "num_requests");
  if (inst.num_requests < 0) Fail("$.num_requests", "negative request count");
  const int n = inst.num_requests;

  const json& depot = Field(doc, root, "depot");
  RejectUnknown(depot, "$.depot", {"x", "y"});
  inst.depot = ParsePosition(depot, "$.depot");

  const json& pickups = Field(doc, root, "pickups");
  if (!pickups.is_array()) Fail("$.pickups", "expected an array");
  const json& deliveries = Field(doc, root, "deliveries");
  if (!deliveries.is_array()) Fail("$.deliveries", "expected an array");
  if (static_cast<int>(pickups.size()) != n ||
      static_cast<int>(deliveries.size()) != n) {
    Fail("$", fmt::format("inconsistent dimensions: num_requests={} but {} "
                          "pickups and {} deliveries",
                          n, pickups.size(), deliveries.size()));
  }
  for (int i = 0; i < n; ++i) {
    const std::string path = fmt::format("$.pickups[{}]", i);
    const json& p = pickups[i];
    RejectUnknown(p, path, {"id", "x", "y", "demand", "tw"});
    Pickup pk;
    pk.id = Integer(p, path, "id");
    pk.position = ParsePosition(p, path);
    pk.demand = Number(p, path, "demand");
    pk.window = ParseWindow(Field(p, path, "tw"), path + ".tw");
    inst.pickups.push_back(pk);
  }
  for (int i = 0; i < n; ++i) {
    const std::string path = fmt::format("$.deliveries[{}]", i);
    const json& d = deliveries[i];
    RejectUnknown(d, path, {"id", "x", "y", "tw"});
    Delivery dv;
    dv.id = Integer(d, path, "id");
    dv.position = ParsePosition(d, path);
    dv.window = ParseWindow(Field(d, path, "tw"), path + ".tw");
    inst.deliveries.push_back(dv);
  }

  const json& vehicles = Field(doc, root, "vehicles");
  if (!vehicles.is_array()) Fail("$.vehicles", "expected an array");
  for (std::size_t k = 0; k < vehicles.size(); ++k) {
    const std::string path = fmt::format("$.vehicles[{}]", k);
    RejectUnknown(vehicles[k], path, {"capacity", "max_route_duration"});
    inst.vehicles.push_back({Number(vehicles[k], path, "capacity"),
                             Number(vehicles[k], path, "max_route_duration")});
  }
  inst.depot_window =
      ParseWindow(Field(doc, root, "depot_window"), "$.depot_window");
  const json& crossdock = Field(doc, root, "crossdock");
  RejectUnknown(crossdock, "$.crossdock", {"fixed_time", "per_unit_time"});
  inst.fixed_time = Number(crossdock, "$.crossdock", "fixed_time");
  inst.per_unit_time = Number(crossdock, "$.crossdock", "per_unit_time");
  inst.max_ride_time = Number(doc, root, "max_ride_time");

  const std::size_t size = 2 * static_cast<std::size_t>(n) + 1;
  if (auto it = doc.find("travel_time_matrix"); it != doc.end()) {
    inst.travel_time_matrix = ParseMatrix(*it, "$.travel_time_matrix", size);
  }
  if (auto it = doc.find("cost_matrix"); it != doc.end()) {
    inst.cost_matrix = ParseMatrix(*it, "$.cost_matrix", size);
  }

  for (const auto& d : ValidateInstance(inst)) {
    if (d.severity == Severity::kError) Fail("$", d.message);
  }
  return inst;
}

std::string StoreInstance(const Instance& instance) {
  json doc = json::object();
  doc["name"] = instance.name;
  doc["num_requests"] = instance.num_requests;
  json depot = json::object();
  if (instance.depot) {
    depot["x"] = instance.depot->x;
    depot["y"] = instance.depot->y;
  }
  doc["depot"] = depot;
  json pickups = json::array();
  for (const auto& p : instance.pickups) {
    json item;
    item["id"] = p.id;
    if (p.position) {
      item["x"] = p.position->x;
      item["y"] = p.position->y;
    }
    item["demand"] = p.demand;
    item["tw"] = WindowJson(p.window);
    pickups.push_back(std::move(item));
  }
  doc["pickups"] = std::move(pickups);
  json deliveries = json::array();
  for (const auto& d : instance.deliveries) {
    json item;
    item["id"] = d.id;
    if (d.position) {
      item["x"] = d.position->x;
      item["y"] = d.position->y;
    }
    item["tw"] = WindowJson(d.window);
    deliveries.push_back(std::move(item));
  }
  doc["deliveries"] = std::move(deliveries);
  json vehicles = json::array();
  for (const auto& v : instance.vehicles) {
    vehicles.push_back(
        {{"capacity", v.capacity}, {"max_route_duration", v.max_route_duration}});
  }
  doc["vehicles"] = std::move(vehicles);
  doc["depot_window"] = WindowJson(instance.depot_window);
  doc["crossdock"] = {{"fixed_time", instance.fixed_time},
                      {"per_unit_time", instance.per_unit_time}};
  doc["max_ride_time"] = instance.max_ride_time;
  if (instance.travel_time_matrix) {
    doc["travel_time_matrix"] = MatrixJson(*instance.travel_time_matrix);
  }
  if (instance.cost_matrix) {
    doc["cost_matrix"] = MatrixJson(*instance.cost_matrix);
  }
  return doc.dump(2) + "\n";
}

Instance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError(fmt::format("cannot open {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return LoadInstance(buffer.str());
}

void WriteInstanceFile(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError(fmt::format("cannot write {}", path));
  out << StoreInstance(instance);
}

}  // namespace pdpcd
