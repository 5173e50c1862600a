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

// Bounded-variable dual simplex for linear programs with finite column
// bounds.
//
// Every row i gets a logical variable s_i = a_i x whose bounds are the row
// bounds intersected with the activity range implied by the column bounds.
// All variables are therefore boxed, so any basis can be made dual feasible
// by putting each nonbasic variable at the bound matching the sign of its
// reduced cost. The dual simplex then serves both cold starts (from the
// all-logical basis) and warm starts after bound changes.

#ifndef PDPCD_LP_H_
#define PDPCD_LP_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdpcd/sparse_lu.h"

namespace pdpcd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// min c'x  s.t.  row_lower <= A x <= row_upper,  col_lower <= x <= col_upper.
struct LinearProgram {
  std::vector<double> cost;
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  // Row-major sparse A.
  std::vector<int> row_start{0};
  std::vector<int> col_index;
  std::vector<double> value;
  std::vector<double> row_lower;
  std::vector<double> row_upper;

  int num_cols() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(row_lower.size()); }

  int AddColumn(double lower, double upper, double objective);
  int AddRow(std::span<const std::pair<int, double>> entries, double lower,
             double upper);
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  // Dual objective exceeded the caller's cutoff; the objective is a valid
  // lower bound but the solve stopped early.
  kCutoff,
};

const char* LpStatusName(LpStatus status);

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper };

// Basis descriptor: basic variable per position (structural j < n, logical
// of row i is n + i), bound status of every variable and the dual
// steepest-edge weights of the basic rows.
struct Basis {
  std::vector<int> basic;
  std::vector<VarStatus> status;
  std::vector<double> weights;
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-9;
  int refactor_interval = 100;
  int bland_after = 1000;  // non-improving pivots before Bland's rule
  long iteration_limit = 200000;
  bool debug = false;  // dump basis and residuals to stderr
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> values;
  double objective = 0.0;
  Basis basis;
  long iterations = 0;
  std::string diagnostics;
};

class DualSimplex {
 public:
  explicit DualSimplex(const LinearProgram& lp, LpOptions options = {});

  int num_cols() const { return n_; }
  int num_rows() const { return m_; }

  // Changes the bounds of structural column j (must be finite, lb <= ub).
  void SetColumnBounds(int j, double lower, double upper);
  // Restores every column bound of the original program.
  void ResetColumnBounds();
  double column_lower(int j) const { return lb_[j]; }
  double column_upper(int j) const { return ub_[j]; }

  // Installs a basis (for instance from a parent node). Incompatible or
  // singular bases are repaired with logical columns.
  void LoadBasis(const Basis& basis);
  // Returns to the all-logical starting basis.
  void ResetBasis();
  Basis GetBasis() const;

  // Reoptimizes from the current basis. Stops early with kCutoff once the
  // dual objective exceeds `cutoff`.
  LpStatus Solve(double cutoff = kInfinity);

  LpStatus status() const { return status_; }
  double objective() const;
  std::vector<double> values() const;
  double value(int j) const { return x_[j]; }
  long iterations() const { return iterations_; }
  long total_iterations() const { return total_iterations_; }
  const std::string& diagnostics() const { return diagnostics_; }

  // Largest violation of the row equations and bounds at the current point.
  double PrimalResidual() const;
  // Largest reduced-cost sign violation among nonbasic variables.
  double DualResidual() const;

 private:
  bool Factorize();
  void ComputePrimal();
  void ComputeDuals();
  // Moves nonbasic variables to the bound that matches their reduced cost.
  // Returns true if any variable moved.
  bool FixDualInfeasibilities();
  void Column(int var, SparseColumn& out) const;
  void DumpState(const char* where) const;

  LpOptions opts_;
  int n_ = 0;  // structural columns
  int m_ = 0;  // rows
  std::vector<double> cost_;
  std::vector<double> orig_lb_, orig_ub_;
  std::vector<double> lb_, ub_;
  // Column-major and row-major copies of A.
  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<int> row_start_, row_col_;
  std::vector<double> row_val_;

  std::vector<double> x_;
  std::vector<double> d_;
  std::vector<VarStatus> status_of_;
  std::vector<int> basic_;
  std::vector<int> position_;  // basis position or -1
  std::vector<double> weights_;
  SparseLu lu_;
  bool factor_valid_ = false;
  bool primal_valid_ = false;
  bool statically_infeasible_ = false;

  LpStatus status_ = LpStatus::kIterationLimit;
  long iterations_ = 0;
  long total_iterations_ = 0;
  std::string diagnostics_;
};

struct BoundOverride {
  int column = 0;
  double lower = 0.0;
  double upper = 0.0;
};

// One-shot solve: applies the overrides and optionally warm starts from
// `warm_start`.
LpSolution SolveLp(const LinearProgram& lp,
                   std::span<const BoundOverride> overrides = {},
                   const Basis* warm_start = nullptr, LpOptions options = {});

}  // namespace pdpcd

#endif  // PDPCD_LP_H_
