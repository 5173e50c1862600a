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

// Brute-force reference solver for tiny instances. It enumerates every
// route structure, ignores the MILP entirely and decides each structure's
// schedule with a small LP over the continuous times.

#ifndef PDPCD_EXHAUSTIVE_H_
#define PDPCD_EXHAUSTIVE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pdpcd/branch_and_cut.h"
#include "pdpcd/instance.h"
#include "pdpcd/solution.h"

namespace pdpcd {

inline constexpr int kMaxOracleRequests = 5;

struct VehicleSequences {
  std::vector<int> pickups;     // pickup vertices in visiting order
  std::vector<int> deliveries;  // delivery vertices in visiting order
};

struct RouteStructure {
  std::vector<VehicleSequences> vehicles;
};

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of structures: (n! * C(n-1, K-1))^2, every vehicle taking at least
// one pickup and one delivery.
std::uint64_t CountStructures(int n, int num_vehicles);

// All structures in enumeration order: pickup configurations outermost,
// each configuration ordered lexicographically by vehicle assignment and
// then by the per-vehicle permutations.
std::vector<RouteStructure> EnumerateStructures(int n, int num_vehicles);

// A schedule for the fixed structure, or nullopt when none exists. Returns
// a complete Solution (times, transfers, ride times, cost).
std::optional<Solution> ScheduleFeasible(const Instance& instance,
                                         const RouteStructure& structure);

struct OracleStats {
  std::uint64_t structures = 0;  // enumerated
  std::uint64_t schedules_checked = 0;
};

// Cheapest feasible structure with its schedule. Throws OracleRefused when
// n > kMaxOracleRequests. Only status, incumbent, objective, bound and gap
// of the result are meaningful.
SolveResult BruteForceSolve(const Instance& instance,
                            OracleStats* stats = nullptr);

}  // namespace pdpcd

#endif  // PDPCD_EXHAUSTIVE_H_
