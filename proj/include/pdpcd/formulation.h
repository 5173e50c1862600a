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

// Three-index formulation of the pickup and delivery problem with a
// crossdock: variables, constraint families, static valid inequalities and
// the maps between model values and Solution objects.

#ifndef PDPCD_FORMULATION_H_
#define PDPCD_FORMULATION_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdpcd/arcs.h"
#include "pdpcd/instance.h"
#include "pdpcd/milp_model.h"
#include "pdpcd/solution.h"

namespace pdpcd {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite big-M constants.
struct BigMTable {
  std::vector<double> precedence;  // per arc: max(eps, l_i + t_ij - e_j)
  double reload_sync = 0.0;        // w_k >= z_i - M (1 - theta)
  double unload_sync = 0.0;        // z_i >= tau_k - M (1 - eta)
  double sigma = 0.0;              // bound of the sigma slacks
};

inline constexpr double kBigMFloor = 1e-9;

BigMTable ComputeBigM(const Instance& instance, const ArcSet& arcs);

// Reason why the arc structure admits no solution at all (empty arc set or
// fewer requests than vehicles), or nullopt.
std::optional<std::string> StructuralInfeasibility(const Instance& instance,
                                                   const ArcSet& arcs);

// Builds the base model. Throws ModelError when StructuralInfeasibility
// reports a reason.
MilpModel BuildMilp(const Instance& instance, const ArcSet& arcs,
                    const BigMTable& bigm);

// Appends the serve-time, 2-cycle, ride-time lower bound and conflict-pair
// rows.
void AddValidInequalities(MilpModel& model, const Instance& instance,
                          const ArcSet& arcs);

// Arc set after elimination, big-M table and model in one bundle.
struct Formulation {
  ArcSet arcs;
  BigMTable bigm;
  MilpModel model;
};

Formulation Formulate(const Instance& instance, bool with_cuts);

// Reads routes, schedule and transfers out of an integer-feasible point.
// Throws ModelError("non-integral routing variables") on fractional x and
// ModelError when the arcs do not form one pickup and one delivery path per
// vehicle.
Solution ExtractSolution(const MilpModel& model, const Instance& instance,
                         const ArcSet& arcs, std::span<const double> values,
                         double tol = 1e-6);

// Inverse of ExtractSolution: the model point encoding `solution`. Vehicles
// that do not visit a vertex copy the serving vehicle's time there. Throws
// ModelError when a route uses an arc outside `arcs`.
std::vector<double> EmbedSolution(const MilpModel& model,
                                  const Instance& instance,
                                  const ArcSet& arcs,
                                  const Solution& solution);

}  // namespace pdpcd

#endif  // PDPCD_FORMULATION_H_
