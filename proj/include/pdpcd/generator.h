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

// Seeded random instances that are feasible by construction: a random plan
// (assignment, orders, earliest schedule through the crossdock) is drawn
// first and the time windows, ride-time limit and route duration are then
// laid around it.

#ifndef PDPCD_GENERATOR_H_
#define PDPCD_GENERATOR_H_

#include <cstdint>

#include "pdpcd/instance.h"
#include "pdpcd/solution.h"

namespace pdpcd {

struct GeneratorParams {
  int n = 4;
  int num_vehicles = 2;
  std::uint64_t seed = 1;
  int box_size = 100;        // coordinates are integers in [0, box_size]
  int demand_min = 1;
  int demand_max = 10;
  double capacity = 30.0;
  double window_slack = 60.0;  // half-width of windows around the plan
  double ride_factor = 1.3;    // L = ceil(factor * longest planned ride)
  double duration_factor = 1.3;  // T = ceil(factor * longest planned leg)
  double fixed_time = 10.0;
  double per_unit_time = 1.0;
};

struct GeneratedInstance {
  Instance instance;
  Solution plan;  // the feasible plan the instance was built around
};

// Deterministic for fixed params. Throws InstanceError for parameters that
// cannot produce a plan.
GeneratedInstance GenerateInstance(const GeneratorParams& params);

}  // namespace pdpcd

#endif  // PDPCD_GENERATOR_H_
