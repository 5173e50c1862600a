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

#ifndef PDPCD_SOLUTION_H_
#define PDPCD_SOLUTION_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdpcd {

// Routes and crossdock schedule of one vehicle. The routes hold the visited
// pickup (resp. delivery) vertices only; o1/o2 (resp. o3/o4) are implied.
struct VehicleRoute {
  std::vector<int> pickup_route;
  std::vector<int> delivery_route;
  double start_time = 0.0;           // u_{o1}
  double crossdock_arrival = 0.0;    // u_{o2}
  double unload_end = 0.0;           // tau
  double reload_start = 0.0;         // w
  double crossdock_departure = 0.0;  // u_{o3}
  double end_time = 0.0;             // u_{o4}
  bool unloads = false;
  bool reloads = false;
};

// Per-request schedule. Times are the start of service by the serving
// vehicle; the transfer fields are set only for requests that change
// vehicle at the crossdock.
struct RequestRecord {
  std::optional<double> pickup_time;
  std::optional<double> delivery_time;
  double ride_time = 0.0;
  std::optional<int> unloaded_by;
  std::optional<int> reloaded_by;
  std::optional<double> unload_time;  // z
};

struct Solution {
  std::vector<VehicleRoute> vehicles;
  std::vector<RequestRecord> requests;  // request i at index i-1
  double cost = 0.0;
};

class SolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Solution LoadSolution(std::string_view json_text);
std::string StoreSolution(const Solution& solution);
Solution ReadSolutionFile(const std::string& path);
void WriteSolutionFile(const Solution& solution, const std::string& path);

}  // namespace pdpcd

#endif  // PDPCD_SOLUTION_H_
