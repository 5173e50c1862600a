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

// LP-based branch and bound over the static-cut formulation.
//
// Nodes are selected best bound first (ties by creation order). After
// branching, the search plunges into the child on the rounding side of the
// branching variable and keeps diving until the dive ends in a pruned,
// infeasible or integral node. Integral nodes are polished by re-solving
// with every binary fixed, and the resulting point is only accepted as an
// incumbent after it passes the independent validator.

#ifndef PDPCD_BRANCH_AND_CUT_H_
#define PDPCD_BRANCH_AND_CUT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "pdpcd/instance.h"
#include "pdpcd/milp_model.h"
#include "pdpcd/solution.h"

namespace pdpcd {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kTimeLimitFeasible,
  kTimeLimitNoSolution,
};

const char* SolveStatusName(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kTimeLimitNoSolution;
  std::optional<Solution> incumbent;
  double objective = 0.0;  // +inf without incumbent
  double bound = 0.0;      // proven lower bound
  double gap = 0.0;        // |objective - bound| / max(1, |objective|)
  long nodes = 0;          // NE
  double cpu_seconds = 0.0;
  int constraints = 0;     // CNS
  int variables = 0;
  long lp_iterations = 0;
  double root_bound = 0.0;
  std::string reason;      // why infeasible, when known
  std::string log;         // the solve log as printed

  // Machine-readable summary: status, objective, bound, gap, CNS, NE, CPU,
  // ost and friends.
  std::string SummaryJson() const;
};

struct SolveOptions {
  double time_limit_s = 14400.0;
  double gap_tol = 1e-6;
  bool enable_cuts = true;
  // Accepted for interface stability; the search itself has no random
  // component.
  std::uint64_t seed = 0;
  long node_limit = -1;  // negative: unbounded
  int threads = 1;
  int log_interval = 100;  // nodes between log lines
  // Receives the log as it is produced (may be null). Each line ends with
  // an elapsed-time field "t=<seconds>s" so it can be stripped.
  std::ostream* log = nullptr;
  bool log_elapsed = true;
};

inline constexpr double kIntegralityTol = 1e-6;

// First binary to branch on, or nullopt when every binary is within `tol`
// of 0 or 1. Routing variables beat transfer flags, which beat the
// indicators; inside a class the most fractional wins, ties going to the
// lowest variable index.
std::optional<int> CheckIntegrality(const MilpModel& model,
                                    std::span<const double> values,
                                    double tol = kIntegralityTol);

SolveResult Solve(const Instance& instance, const SolveOptions& options = {});

}  // namespace pdpcd

#endif  // PDPCD_BRANCH_AND_CUT_H_
