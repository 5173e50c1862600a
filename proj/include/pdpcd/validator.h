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

// Checks a Solution against the problem definition using only instance
// data. Nothing here looks at the MILP, so it also catches formulation bugs.

#ifndef PDPCD_VALIDATOR_H_
#define PDPCD_VALIDATOR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pdpcd/instance.h"
#include "pdpcd/solution.h"

namespace pdpcd {

// Raised when a solution cannot be checked at all, for example because a
// route names a vertex that does not exist.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kTimeTolerance = 1e-6;
inline constexpr double kCostTolerance = 1e-6;  // relative

struct Violation {
  std::string entity;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // negative when violated
};

struct FamilyResult {
  std::string family;  // "eq2" ... "eq22"
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

struct ValidationReport {
  std::vector<FamilyResult> families;
  std::vector<double> ride_times;  // recomputed, request i at index i-1
  double stored_cost = 0.0;
  double recomputed_cost = 0.0;
  bool cost_matches = false;

  bool passed() const;
  // nullptr when the family name is unknown.
  const FamilyResult* Family(std::string_view name) const;
  int num_violations() const;
  std::string ToJson() const;
};

// Names of the checked families in report order.
const std::vector<std::string>& ValidatedFamilies();

ValidationReport Validate(const Instance& instance, const Solution& solution);

// r_i = (service start at n+i) - (service start at i). Throws
// ValidationError when a time is missing.
std::vector<double> ComputeRideTimes(const Instance& instance,
                                     const Solution& solution);

// Sum of c_ij over every traversed arc. Throws ValidationError when a route
// uses a pair that is not an arc.
double EvaluateCost(const Instance& instance, const Solution& solution);

// Route table (per vehicle served vertices, travel time, duration, total
// cost) followed by per-vertex service times and ride times. Three decimals.
std::string FormatRouteTable(const Instance& instance,
                             const Solution& solution);

// Route table plus the per-family verdicts.
std::string FormatReport(const Instance& instance, const Solution& solution,
                         const ValidationReport& report);

}  // namespace pdpcd

#endif  // PDPCD_VALIDATOR_H_
