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

// Problem data for the pickup and delivery problem with a crossdock for
// perishable goods.
//
// Vertex numbering used throughout the library:
//   0            o1  start of the pickup route (depot)
//   1 .. n       pickup vertices
//   n+1 .. 2n    delivery vertices; request i is delivered at n+i
//   2n+1         o2  arrival at the crossdock
//   2n+2         o3  departure from the crossdock
//   2n+3         o4  end of the delivery route (depot)
// The four depot copies share the same location, which is index 0 of the
// travel-time and cost matrices.

#ifndef PDPCD_INSTANCE_H_
#define PDPCD_INSTANCE_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdpcd {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct TimeWindow {
  double earliest = 0.0;
  double latest = 0.0;
};

struct Pickup {
  int id = 0;
  std::optional<Point> position;
  double demand = 0.0;
  TimeWindow window;
};

struct Delivery {
  int id = 0;
  std::optional<Point> position;
  TimeWindow window;
};

struct Vehicle {
  double capacity = 0.0;
  double max_route_duration = 0.0;
};

// Square matrix over locations [depot, pickups 1..n, deliveries n+1..2n].
// Missing entries are NaN.
using Matrix = std::vector<std::vector<double>>;

// Raised for malformed instance files and inconsistent dimensions.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  std::string name;
  int num_requests = 0;
  std::optional<Point> depot;
  std::vector<Pickup> pickups;
  std::vector<Delivery> deliveries;
  std::vector<Vehicle> vehicles;
  TimeWindow depot_window;
  double fixed_time = 0.0;     // a
  double per_unit_time = 0.0;  // beta
  double max_ride_time = 0.0;  // L
  std::optional<Matrix> travel_time_matrix;
  std::optional<Matrix> cost_matrix;

  int n() const { return num_requests; }
  int num_vehicles() const { return static_cast<int>(vehicles.size()); }
  int num_vertices() const { return 2 * num_requests + 4; }

  int o1() const { return 0; }
  int o2() const { return 2 * num_requests + 1; }
  int o3() const { return 2 * num_requests + 2; }
  int o4() const { return 2 * num_requests + 3; }

  bool IsPickup(int v) const { return v >= 1 && v <= num_requests; }
  bool IsDelivery(int v) const {
    return v > num_requests && v <= 2 * num_requests;
  }
  bool IsDepotCopy(int v) const { return v == 0 || v > 2 * num_requests; }

  // Matrix index of a vertex; all depot copies map to 0.
  int Location(int v) const { return IsDepotCopy(v) ? 0 : v; }

  // Pickup demand for i in P, delivery demand q_{n+i} = q_i for deliveries,
  // zero for depot copies.
  double Demand(int v) const;
  // Depot copies use the depot window [e_{o1}, l_{o4}].
  TimeWindow Window(int v) const;
  std::optional<Point> Position(int v) const;

  // Travel time and cost between two vertices. Coordinates give Euclidean
  // distance at unit speed; an explicit matrix overrides them. Cost falls
  // back to travel time. Returns NaN when the value is not available.
  double TravelTime(int from, int to) const;
  double Cost(int from, int to) const;

  std::string VertexName(int v) const;
};

enum class Severity { kWarning, kError };

struct Diagnostic {
  Severity severity;
  std::string message;
};

// Checks the instance invariants. An empty list means the instance is valid;
// warnings announce structurally infeasible but well-formed data.
std::vector<Diagnostic> ValidateInstance(const Instance& instance);
bool HasErrors(const std::vector<Diagnostic>& diagnostics);

// JSON (de)serialization. LoadInstance throws InstanceError with the path of
// the offending field; unknown fields are rejected.
Instance LoadInstance(std::string_view json_text);
std::string StoreInstance(const Instance& instance);
Instance ReadInstanceFile(const std::string& path);
void WriteInstanceFile(const Instance& instance, const std::string& path);

}  // namespace pdpcd

#endif  // PDPCD_INSTANCE_H_
