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

#include "pdpcd/milp_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace pdpcd {

std::string_view RowTagName(RowTag tag) {
  switch (tag) {
    case RowTag::kEq2: return "eq2";
    case RowTag::kEq3: return "eq3";
    case RowTag::kEq4: return "eq4";
    case RowTag::kEq5: return "eq5";
    case RowTag::kEq6: return "eq6";
    case RowTag::kEq7: return "eq7";
    case RowTag::kEq8: return "eq8";
    case RowTag::kEq10: return "eq10";
    case RowTag::kEq11: return "eq11";
    case RowTag::kEq12: return "eq12";
    case RowTag::kEq13: return "eq13";
    case RowTag::kEq14: return "eq14";
    case RowTag::kEq15: return "eq15";
    case RowTag::kEq16: return "eq16";
    case RowTag::kEq17: return "eq17";
    case RowTag::kEq18: return "eq18";
    case RowTag::kEq19: return "eq19";
    case RowTag::kEq20: return "eq20";
    case RowTag::kEq23: return "eq23";
    case RowTag::kEq24: return "eq24";
    case RowTag::kViServeTime: return "vi-servetime";
    case RowTag::kViConflict: return "vi-conflict";
    case RowTag::kViSubtour: return "vi-subtour";
    case RowTag::kViRideTimeLb: return "vi-ridetimeLB";
  }
  return "?";
}

bool IsValidInequality(RowTag tag) {
  return tag == RowTag::kViServeTime || tag == RowTag::kViConflict ||
         tag == RowTag::kViSubtour || tag == RowTag::kViRideTimeLb;
}

int MilpModel::AddVariable(Variable var) {
  if (!std::isfinite(var.lower) || !std::isfinite(var.upper) ||
      var.lower > var.upper) {
    throw std::invalid_argument(
        fmt::format("variable {} has invalid bounds [{}, {}]", var.name,
                    var.lower, var.upper));
  }
  vars_.push_back(std::move(var));
  return num_variables() - 1;
}

int MilpModel::AddConstraint(Constraint row) {
  for (double c : row.coefs) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument(fmt::format(
          "non-finite coefficient in {} row", RowTagName(row.tag)));
    }
  }
  if (!std::isfinite(row.rhs)) {
    throw std::invalid_argument(
        fmt::format("non-finite right-hand side in {} row",
                    RowTagName(row.tag)));
  }
  rows_.push_back(std::move(row));
  return num_constraints() - 1;
}

int MilpModel::CountRows(RowTag tag) const {
  return static_cast<int>(std::count_if(
      rows_.begin(), rows_.end(),
      [tag](const Constraint& c) { return c.tag == tag; }));
}

LinearProgram MilpModel::Relaxation() const {
  LinearProgram lp;
  for (const Variable& v : vars_) lp.AddColumn(v.lower, v.upper, v.objective);
  std::vector<std::pair<int, double>> entries;
  for (const Constraint& row : rows_) {
    entries.clear();
    for (std::size_t e = 0; e < row.vars.size(); ++e) {
      entries.emplace_back(row.vars[e], row.coefs[e]);
    }
    const double lo = row.sense == Sense::kLessEqual ? -kInfinity : row.rhs;
    const double hi = row.sense == Sense::kGreaterEqual ? kInfinity : row.rhs;
    lp.AddRow(entries, lo, hi);
  }
  return lp;
}

double RowActivity(const Constraint& row, std::span<const double> values) {
  double act = 0.0;
  for (std::size_t e = 0; e < row.vars.size(); ++e) {
    act += row.coefs[e] * values[row.vars[e]];
  }
  return act;
}

double MilpModel::ObjectiveValue(std::span<const double> values) const {
  double obj = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    obj += vars_[j].objective * values[j];
  }
  return obj;
}

namespace {

double RowViolation(const Constraint& row, double act) {
  switch (row.sense) {
    case Sense::kLessEqual:
      return std::max(0.0, act - row.rhs);
    case Sense::kGreaterEqual:
      return std::max(0.0, row.rhs - act);
    case Sense::kEqual:
      return std::abs(act - row.rhs);
  }
  return 0.0;
}

}  // namespace

double MilpModel::MaxViolation(std::span<const double> values,
                               bool check_integrality) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    const Variable& v = vars_[j];
    worst = std::max(worst, v.lower - values[j]);
    worst = std::max(worst, values[j] - v.upper);
    if (check_integrality && v.kind == VarKind::kBinary) {
      worst = std::max(worst, std::abs(values[j] - std::round(values[j])));
    }
  }
  for (const Constraint& row : rows_) {
    worst = std::max(worst, RowViolation(row, RowActivity(row, values)));
  }
  return worst;
}

std::vector<int> MilpModel::ViolatedRows(std::span<const double> values,
                                         double tol) const {
  std::vector<int> out;
  for (int i = 0; i < num_constraints(); ++i) {
    if (RowViolation(rows_[i], RowActivity(rows_[i], values)) > tol) {
      out.push_back(i);
    }
  }
  return out;
}

std::string MilpModel::ToLpFormat() const {
  std::string out = "\\ crossdock pickup and delivery model\nMinimize\n obj:";
  int terms = 0;
  for (const Variable& v : vars_) {
    if (v.objective == 0.0) continue;
    out += fmt::format(" {} {:.17g} {}", v.objective < 0 ? '-' : '+',
                       std::abs(v.objective), v.name);
    if (++terms % 6 == 0) out += "\n ";
  }
  if (terms == 0) out += " 0 " + (vars_.empty() ? std::string("dummy") : vars_[0].name);
  out += "\nSubject To\n";
  for (int i = 0; i < num_constraints(); ++i) {
    const Constraint& row = rows_[i];
    out += fmt::format("\\ {}\n c{}:", RowTagName(row.tag), i);
    for (std::size_t e = 0; e < row.vars.size(); ++e) {
      const double c = row.coefs[e];
      out += fmt::format(" {} {:.17g} {}", c < 0 ? '-' : '+', std::abs(c),
                         vars_[row.vars[e]].name);
    }
    if (row.vars.empty()) out += " 0 " + vars_[0].name;
    const char* op = row.sense == Sense::kLessEqual    ? "<="
                     : row.sense == Sense::kEqual      ? "="
                                                       : ">=";
    out += fmt::format(" {} {:.17g}\n", op, row.rhs);
  }
  out += "Bounds\n";
  for (const Variable& v : vars_) {
    out += fmt::format(" {:.17g} <= {} <= {:.17g}\n", v.lower, v.name, v.upper);
  }
  out += "Binaries\n";
  for (const Variable& v : vars_) {
    if (v.kind == VarKind::kBinary) out += " " + v.name + "\n";
  }
  out += "End\n";
  return out;
}

}  // namespace pdpcd
