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

// Solver-agnostic mixed-integer linear model: a variable catalog, tagged
// linear rows and the index maps of the crossdock formulation.

#ifndef PDPCD_MILP_MODEL_H_
#define PDPCD_MILP_MODEL_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdpcd/lp.h"

namespace pdpcd {

enum class VarKind { kBinary, kContinuous };

// Branching priority class of a binary variable, highest first.
enum class BranchClass { kRouting = 0, kTransfer = 1, kIndicator = 2, kNone = 3 };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  BranchClass branch_class = BranchClass::kNone;
  double lower = 0.0;
  double upper = 0.0;
  double objective = 0.0;
};

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

// Which family of the formulation a row belongs to.
enum class RowTag {
  kEq2,
  kEq3,
  kEq4,
  kEq5,
  kEq6,
  kEq7,
  kEq8,
  kEq10,
  kEq11,
  kEq12,
  kEq13,
  kEq14,
  kEq15,
  kEq16,
  kEq17,
  kEq18,
  kEq19,
  kEq20,
  kEq23,
  kEq24,
  kViServeTime,
  kViConflict,
  kViSubtour,
  kViRideTimeLb,
};

std::string_view RowTagName(RowTag tag);
bool IsValidInequality(RowTag tag);

struct Constraint {
  std::vector<int> vars;
  std::vector<double> coefs;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  RowTag tag = RowTag::kEq2;
};

// Variable indices of the formulation; -1 marks variables that do not
// exist (for example x on an eliminated arc).
struct ModelIndex {
  std::vector<std::vector<int>> x;          // [vehicle][arc]
  std::vector<std::vector<int>> sigma;      // [vehicle][arc], arcs into P u D
  std::vector<std::vector<int>> eta;        // [vehicle][request 1..n]
  std::vector<std::vector<int>> theta;      // [vehicle][request 1..n]
  std::vector<int> eta_any;                 // [vehicle]
  std::vector<int> theta_any;               // [vehicle]
  std::vector<std::vector<int>> u;          // [vehicle][vertex]
  std::vector<int> u_served;                // [vertex], P u D only
  std::vector<int> ride;                    // [request 1..n]
  std::vector<int> tau;                     // [vehicle]
  std::vector<int> w;                       // [vehicle]
  std::vector<int> z;                       // [request 1..n]
};

class MilpModel {
 public:
  int AddVariable(Variable var);
  int AddConstraint(Constraint row);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(int j) const { return vars_[j]; }
  const std::vector<Variable>& variables() const { return vars_; }
  const Constraint& constraint(int i) const { return rows_[i]; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  int CountRows(RowTag tag) const;

  // Continuous relaxation with the catalog bounds.
  LinearProgram Relaxation() const;

  double ObjectiveValue(std::span<const double> values) const;
  // Largest violation of any row or bound, and of integrality when
  // `check_integrality` is set.
  double MaxViolation(std::span<const double> values,
                      bool check_integrality = true) const;
  // Rows violated by more than `tol`, as row indices.
  std::vector<int> ViolatedRows(std::span<const double> values,
                                double tol) const;

  // CPLEX LP text format; each row is preceded by a comment naming its tag.
  std::string ToLpFormat() const;

  ModelIndex index;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

// Row activity helper.
double RowActivity(const Constraint& row, std::span<const double> values);

}  // namespace pdpcd

#endif  // PDPCD_MILP_MODEL_H_
