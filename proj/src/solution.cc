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

#include "pdpcd/solution.h"

#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "json.hpp"

namespace pdpcd {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw SolutionError(fmt::format("{}: {}", path, what));
}

const json& Field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) Fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path + "." + key, "missing field");
  return *it;
}

double Number(const json& obj, const std::string& path, const char* key) {
  const json& v = Field(obj, path, key);
  if (!v.is_number()) Fail(path + "." + key, "expected a number");
  return v.get<double>();
}

bool Bool(const json& obj, const std::string& path, const char* key) {
  const json& v = Field(obj, path, key);
  if (!v.is_boolean()) Fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::vector<int> Route(const json& obj, const std::string& path,
                       const char* key) {
  const json& v = Field(obj, path, key);
  if (!v.is_array()) Fail(path + "." + key, "expected an array of vertices");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) Fail(path + "." + key, "expected integers");
    out.push_back(e.get<int>());
  }
  return out;
}

template <typename T>
std::optional<T> Optional(const json& obj, const std::string& path,
                          const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if constexpr (std::is_same_v<T, int>) {
    if (!it->is_number_integer()) Fail(path + "." + key, "expected an integer");
  } else {
    if (!it->is_number()) Fail(path + "." + key, "expected a number");
  }
  return it->get<T>();
}

template <typename T>
json OptionalJson(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

Solution LoadSolution(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SolutionError(fmt::format("parse error: {}", e.what()));
  }
  Solution sol;
  sol.cost = Number(doc, "$", "cost");
  const json& vehicles = Field(doc, "$", "vehicles");
  if (!vehicles.is_array()) Fail("$.vehicles", "expected an array");
  for (std::size_t k = 0; k < vehicles.size(); ++k) {
    const std::string path = fmt::format("$.vehicles[{}]", k);
    const json& v = vehicles[k];
    VehicleRoute route;
    route.pickup_route = Route(v, path, "pickup_route");
    route.delivery_route = Route(v, path, "delivery_route");
    const json& times = Field(v, path, "depot_times");
    route.start_time = Number(times, path + ".depot_times", "o1");
    route.crossdock_arrival = Number(times, path + ".depot_times", "o2");
    route.crossdock_departure = Number(times, path + ".depot_times", "o3");
    route.end_time = Number(times, path + ".depot_times", "o4");
    route.unload_end = Number(v, path, "unload_end");
    route.reload_start = Number(v, path, "reload_start");
    route.unloads = Bool(v, path, "unloads");
    route.reloads = Bool(v, path, "reloads");
    sol.vehicles.push_back(std::move(route));
  }
  const json& requests = Field(doc, "$", "requests");
  if (!requests.is_array()) Fail("$.requests", "expected an array");
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const std::string path = fmt::format("$.requests[{}]", i);
    const json& r = requests[i];
    const json& id = Field(r, path, "id");
    if (!id.is_number_integer() || id.get<int>() != static_cast<int>(i) + 1) {
      Fail(path + ".id", fmt::format("expected id {}", i + 1));
    }
    RequestRecord rec;
    rec.pickup_time = Optional<double>(r, path, "pickup_time");
    rec.delivery_time = Optional<double>(r, path, "delivery_time");
    rec.ride_time = Number(r, path, "ride_time");
    rec.unloaded_by = Optional<int>(r, path, "unloaded_by");
    rec.reloaded_by = Optional<int>(r, path, "reloaded_by");
    rec.unload_time = Optional<double>(r, path, "unload_time");
    sol.requests.push_back(rec);
  }
  return sol;
}

std::string StoreSolution(const Solution& solution) {
  json doc;
  doc["cost"] = solution.cost;
  json vehicles = json::array();
  for (const VehicleRoute& v : solution.vehicles) {
    json item;
    item["pickup_route"] = v.pickup_route;
    item["delivery_route"] = v.delivery_route;
    item["depot_times"] = {{"o1", v.start_time},
                           {"o2", v.crossdock_arrival},
                           {"o3", v.crossdock_departure},
                           {"o4", v.end_time}};
    item["unload_end"] = v.unload_end;
    item["reload_start"] = v.reload_start;
    item["unloads"] = v.unloads;
    item["reloads"] = v.reloads;
    vehicles.push_back(std::move(item));
  }
  doc["vehicles"] = std::move(vehicles);
  json requests = json::array();
  for (std::size_t i = 0; i < solution.requests.size(); ++i) {
    const RequestRecord& r = solution.requests[i];
    json item;
    item["id"] = static_cast<int>(i) + 1;
    item["pickup_time"] = OptionalJson(r.pickup_time);
    item["delivery_time"] = OptionalJson(r.delivery_time);
    item["ride_time"] = r.ride_time;
    item["unloaded_by"] = OptionalJson(r.unloaded_by);
    item["reloaded_by"] = OptionalJson(r.reloaded_by);
    item["unload_time"] = OptionalJson(r.unload_time);
    requests.push_back(std::move(item));
  }
  doc["requests"] = std::move(requests);
  return doc.dump(2) + "\n";
}

Solution ReadSolutionFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SolutionError(fmt::format("cannot open {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return LoadSolution(buffer.str());
}

void WriteSolutionFile(const Solution& solution, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SolutionError(fmt::format("cannot write {}", path));
  out << StoreSolution(solution);
}

}  // namespace pdpcd
