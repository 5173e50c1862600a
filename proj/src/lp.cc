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

#include "pdpcd/lp.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include <fmt/core.h>

namespace pdpcd {

namespace {

constexpr double kHarrisTol = 1e-9;
constexpr double kMinWeight = 1e-8;

}  // namespace

int LinearProgram::AddColumn(double lower, double upper, double objective) {
  cost.push_back(objective);
  col_lower.push_back(lower);
  col_upper.push_back(upper);
  return num_cols() - 1;
}

int LinearProgram::AddRow(std::span<const std::pair<int, double>> entries,
                          double lower, double upper) {
  for (const auto& [j, v] : entries) {
    if (v == 0.0) continue;
    col_index.push_back(j);
    value.push_back(v);
  }
  row_start.push_back(static_cast<int>(col_index.size()));
  row_lower.push_back(lower);
  row_upper.push_back(upper);
  return num_rows() - 1;
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
    case LpStatus::kCutoff:
      return "cutoff";
  }
  return "unknown";
}

DualSimplex::DualSimplex(const LinearProgram& lp, LpOptions options)
    : opts_(options), n_(lp.num_cols()), m_(lp.num_rows()) {
  const int total = n_ + m_;
  cost_.assign(total, 0.0);
  orig_lb_.assign(total, 0.0);
  orig_ub_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (!std::isfinite(lp.col_lower[j]) || !std::isfinite(lp.col_upper[j])) {
      throw std::invalid_argument(
          fmt::format("column {} has an infinite bound", j));
    }
    if (lp.col_lower[j] > lp.col_upper[j]) {
      throw std::invalid_argument(
          fmt::format("column {} has lower bound above upper bound", j));
    }
    cost_[j] = lp.cost[j];
    orig_lb_[j] = lp.col_lower[j];
    orig_ub_[j] = lp.col_upper[j];
  }

  row_start_ = lp.row_start;
  row_col_ = lp.col_index;
  row_val_ = lp.value;
  col_start_.assign(n_ + 1, 0);
  for (int j : row_col_) ++col_start_[j + 1];
  for (int j = 0; j < n_; ++j) col_start_[j + 1] += col_start_[j];
  col_row_.resize(row_col_.size());
  col_val_.resize(row_col_.size());
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < m_; ++i) {
    double min_act = 0.0;
    double max_act = 0.0;
    for (int e = row_start_[i]; e < row_start_[i + 1]; ++e) {
      const int j = row_col_[e];
      const double a = row_val_[e];
      col_row_[fill[j]] = i;
      col_val_[fill[j]++] = a;
      min_act += std::min(a * orig_lb_[j], a * orig_ub_[j]);
      max_act += std::max(a * orig_lb_[j], a * orig_ub_[j]);
    }
    double lo = std::max(lp.row_lower[i], min_act);
    double hi = std::min(lp.row_upper[i], max_act);
    if (lo > hi) {
      if (lo - hi > opts_.feasibility_tol * (1.0 + std::abs(lo))) {
        statically_infeasible_ = true;
      }
      hi = lo;
    }
    orig_lb_[n_ + i] = lo;
    orig_ub_[n_ + i] = hi;
  }
  lb_ = orig_lb_;
  ub_ = orig_ub_;
  x_.assign(total, 0.0);
  d_.assign(total, 0.0);
  ResetBasis();
}

void DualSimplex::SetColumnBounds(int j, double lower, double upper) {
  lb_[j] = lower;
  ub_[j] = upper;
  if (position_[j] < 0) {
    x_[j] = status_of_[j] == VarStatus::kAtUpper ? upper : lower;
    primal_valid_ = false;
  }
}

void DualSimplex::ResetColumnBounds() {
  for (int j = 0; j < n_; ++j) {
    if (lb_[j] != orig_lb_[j] || ub_[j] != orig_ub_[j]) {
      SetColumnBounds(j, orig_lb_[j], orig_ub_[j]);
    }
  }
}

void DualSimplex::ResetBasis() {
  const int total = n_ + m_;
  basic_.resize(m_);
  position_.assign(total, -1);
  status_of_.assign(total, VarStatus::kAtLower);
  for (int j = 0; j < n_; ++j) {
    status_of_[j] = cost_[j] < 0.0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
  }
  for (int i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    position_[n_ + i] = i;
    status_of_[n_ + i] = VarStatus::kBasic;
  }
  weights_.assign(m_, 1.0);
  factor_valid_ = false;
  primal_valid_ = false;
}

void DualSimplex::LoadBasis(const Basis& basis) {
  const int total = n_ + m_;
  if (static_cast<int>(basis.basic.size()) != m_ ||
      static_cast<int>(basis.status.size()) != total) {
    ResetBasis();
    return;
  }
  std::vector<int> position(total, -1);
  for (int r = 0; r < m_; ++r) {
    const int var = basis.basic[r];
    if (var < 0 || var >= total || position[var] >= 0) {
      ResetBasis();
      return;
    }
    position[var] = r;
  }
  basic_ = basis.basic;
  position_ = std::move(position);
  status_of_ = basis.status;
  for (int j = 0; j < total; ++j) {
    if (position_[j] >= 0) {
      status_of_[j] = VarStatus::kBasic;
    } else if (status_of_[j] == VarStatus::kBasic) {
      status_of_[j] = VarStatus::kAtLower;
    }
  }
  if (static_cast<int>(basis.weights.size()) == m_) {
    weights_ = basis.weights;
  } else {
    weights_.assign(m_, 1.0);
  }
  factor_valid_ = false;
  primal_valid_ = false;
}

Basis DualSimplex::GetBasis() const { return {basic_, status_of_, weights_}; }

void DualSimplex::Column(int var, SparseColumn& out) const {
  out.clear();
  if (var < n_) {
    for (int e = col_start_[var]; e < col_start_[var + 1]; ++e) {
      out.emplace_back(col_row_[e], col_val_[e]);
    }
  } else {
    out.emplace_back(var - n_, -1.0);
  }
}

bool DualSimplex::Factorize() {
  std::vector<SparseColumn> columns(m_);
  for (int attempt = 0; attempt < 4; ++attempt) {
    for (int r = 0; r < m_; ++r) Column(basic_[r], columns[r]);
    const SparseLu::Deficiency def = lu_.Factorize(columns);
    if (def.positions.empty()) {
      factor_valid_ = true;
      return true;
    }
    if (opts_.debug) {
      std::cerr << fmt::format("lp: singular basis, repairing {} columns\n",
                               def.positions.size());
    }
    const std::size_t count = std::min(def.positions.size(), def.rows.size());
    for (std::size_t t = 0; t < count; ++t) {
      const int pos = def.positions[t];
      const int out = basic_[pos];
      const int in = n_ + def.rows[t];
      position_[out] = -1;
      status_of_[out] = VarStatus::kAtLower;
      x_[out] = lb_[out];
      basic_[pos] = in;
      position_[in] = pos;
      status_of_[in] = VarStatus::kBasic;
      weights_[pos] = 1.0;
    }
  }
  diagnostics_ = "basis factorization failed after repair";
  factor_valid_ = false;
  return false;
}

void DualSimplex::ComputeDuals() {
  std::vector<double> y(m_);
  for (int r = 0; r < m_; ++r) y[r] = cost_[basic_[r]];
  lu_.Btran(y);
  for (int j = 0; j < n_; ++j) {
    if (position_[j] >= 0) {
      d_[j] = 0.0;
      continue;
    }
    double dj = cost_[j];
    for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      dj -= y[col_row_[e]] * col_val_[e];
    }
    d_[j] = dj;
  }
  for (int i = 0; i < m_; ++i) {
    d_[n_ + i] = position_[n_ + i] >= 0 ? 0.0 : y[i];
  }
}

bool DualSimplex::FixDualInfeasibilities() {
  bool moved = false;
  for (int j = 0; j < n_ + m_; ++j) {
    if (position_[j] >= 0) continue;
    if (lb_[j] == ub_[j]) {
      x_[j] = lb_[j];
      continue;
    }
    if (status_of_[j] == VarStatus::kAtLower && d_[j] < -opts_.optimality_tol) {
      status_of_[j] = VarStatus::kAtUpper;
      moved = true;
    } else if (status_of_[j] == VarStatus::kAtUpper &&
               d_[j] > opts_.optimality_tol) {
      status_of_[j] = VarStatus::kAtLower;
      moved = true;
    }
  }
  if (moved) primal_valid_ = false;
  return moved;
}

void DualSimplex::ComputePrimal() {
  std::vector<double> rhs(m_, 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    if (position_[j] >= 0) continue;
    const double v = status_of_[j] == VarStatus::kAtUpper ? ub_[j] : lb_[j];
    x_[j] = v;
    if (v == 0.0) continue;
    if (j < n_) {
      for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
        rhs[col_row_[e]] -= col_val_[e] * v;
      }
    } else {
      rhs[j - n_] += v;
    }
  }
  lu_.Ftran(rhs);
  for (int r = 0; r < m_; ++r) x_[basic_[r]] = rhs[r];
  primal_valid_ = true;
}

double DualSimplex::objective() const {
  double obj = 0.0;
  for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
  return obj;
}

std::vector<double> DualSimplex::values() const {
  return std::vector<double>(x_.begin(), x_.begin() + n_);
}

double DualSimplex::PrimalResidual() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    double act = 0.0;
    for (int e = row_start_[i]; e < row_start_[i + 1]; ++e) {
      act += row_val_[e] * x_[row_col_[e]];
    }
    worst = std::max(worst, std::abs(act - x_[n_ + i]));
  }
  for (int j = 0; j < n_ + m_; ++j) {
    worst = std::max(worst, lb_[j] - x_[j]);
    worst = std::max(worst, x_[j] - ub_[j]);
  }
  return worst;
}

double DualSimplex::DualResidual() const {
  double worst = 0.0;
  for (int j = 0; j < n_ + m_; ++j) {
    if (position_[j] >= 0 || lb_[j] == ub_[j]) continue;
    if (status_of_[j] == VarStatus::kAtLower) {
      worst = std::max(worst, -d_[j]);
    } else {
      worst = std::max(worst, d_[j]);
    }
  }
  return worst;
}

void DualSimplex::DumpState(const char* where) const {
  std::cerr << fmt::format(
      "lp[{}]: rows={} cols={} iter={} etas={} obj={:.9g} "
      "primal_res={:.3g} dual_res={:.3g}\n",
      where, m_, n_, iterations_, lu_.num_etas(), objective(),
      PrimalResidual(), DualResidual());
  std::cerr << "  basic:";
  for (int r = 0; r < m_; ++r) std::cerr << ' ' << basic_[r];
  std::cerr << '\n';
}

LpStatus DualSimplex::Solve(double cutoff) {
  iterations_ = 0;
  diagnostics_.clear();
  if (statically_infeasible_) {
    status_ = LpStatus::kInfeasible;
    return status_;
  }

  std::vector<double> rho(m_);
  std::vector<double> alpha_col(m_);
  std::vector<double> tau(m_);
  std::vector<double> alpha_row(n_ + m_, 0.0);
  std::vector<int> touched;
  touched.reserve(n_ + m_);
  SparseColumn column;

  // Refactorizes and recomputes primal and dual values from scratch.
  auto refresh = [&]() -> bool {
    if (!Factorize()) return false;
    ComputeDuals();
    FixDualInfeasibilities();
    ComputePrimal();
    return true;
  };

  bool fresh = false;
  if (!factor_valid_) {
    if (!refresh()) {
      status_ = LpStatus::kIterationLimit;
      return status_;
    }
    fresh = true;
  } else if (!primal_valid_) {
    ComputePrimal();
  }

  bool bland = false;
  long stalled = 0;
  double last_obj = objective();
  const double ftol = opts_.feasibility_tol;

  while (true) {
    if (iterations_ >= opts_.iteration_limit) {
      diagnostics_ = fmt::format("iteration limit {} reached",
                                 opts_.iteration_limit);
      status_ = LpStatus::kIterationLimit;
      break;
    }
    if (lu_.num_etas() >= opts_.refactor_interval) {
      if (!refresh()) {
        status_ = LpStatus::kIterationLimit;
        break;
      }
      fresh = true;
    }

    // Leaving row: largest scaled primal infeasibility.
    int r = -1;
    double best = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int var = basic_[i];
      double infeas = 0.0;
      if (x_[var] < lb_[var] - ftol) {
        infeas = lb_[var] - x_[var];
      } else if (x_[var] > ub_[var] + ftol) {
        infeas = x_[var] - ub_[var];
      } else {
        continue;
      }
      if (bland) {
        if (r < 0 || var < basic_[r]) r = i;
        continue;
      }
      const double score = infeas * infeas / weights_[i];
      if (score > best) {
        best = score;
        r = i;
      }
    }
    if (r < 0) {
      if (!fresh) {
        if (!refresh()) {
          status_ = LpStatus::kIterationLimit;
          break;
        }
        fresh = true;
        continue;
      }
      status_ = LpStatus::kOptimal;
      break;
    }

    const double obj = objective();
    if (obj > cutoff) {
      status_ = LpStatus::kCutoff;
      break;
    }
    if (obj > last_obj + 1e-9 * (1.0 + std::abs(last_obj))) {
      stalled = 0;
      last_obj = obj;
    } else if (++stalled >= opts_.bland_after && !bland) {
      bland = true;
    }

    // Pivot row.
    std::fill(rho.begin(), rho.end(), 0.0);
    rho[r] = 1.0;
    lu_.Btran(rho);
    for (int j : touched) alpha_row[j] = 0.0;
    touched.clear();
    for (int i = 0; i < m_; ++i) {
      const double ri = rho[i];
      if (ri == 0.0) continue;
      for (int e = row_start_[i]; e < row_start_[i + 1]; ++e) {
        const int j = row_col_[e];
        if (position_[j] >= 0) continue;
        if (alpha_row[j] == 0.0) touched.push_back(j);
        alpha_row[j] += ri * row_val_[e];
        if (alpha_row[j] == 0.0) alpha_row[j] = 1e-300;
      }
      if (position_[n_ + i] < 0) {
        touched.push_back(n_ + i);
        alpha_row[n_ + i] = -ri;
      }
    }

    const int leaving = basic_[r];
    const bool to_lower = x_[leaving] < lb_[leaving];
    const double target = to_lower ? lb_[leaving] : ub_[leaving];

    // Dual ratio test (Harris two-pass, or Bland's smallest ratio).
    auto eligible = [&](int j) {
      if (lb_[j] == ub_[j]) return false;
      const double a = alpha_row[j];
      if (std::abs(a) <= opts_.pivot_tol) return false;
      const bool at_lower = status_of_[j] == VarStatus::kAtLower;
      return to_lower ? (at_lower ? a < 0.0 : a > 0.0)
                      : (at_lower ? a > 0.0 : a < 0.0);
    };
    auto slack = [&](int j) {
      return status_of_[j] == VarStatus::kAtLower ? std::max(d_[j], 0.0)
                                                  : std::max(-d_[j], 0.0);
    };
    int q = -1;
    if (bland) {
      double best_ratio = kInfinity;
      for (int j : touched) {
        if (!eligible(j)) continue;
        const double ratio = slack(j) / std::abs(alpha_row[j]);
        if (ratio < best_ratio || (ratio == best_ratio && j < q)) {
          best_ratio = ratio;
          q = j;
        }
      }
    } else {
      double bound = kInfinity;
      for (int j : touched) {
        if (!eligible(j)) continue;
        bound = std::min(bound, (slack(j) + kHarrisTol) / std::abs(alpha_row[j]));
      }
      double best_abs = 0.0;
      for (int j : touched) {
        if (!eligible(j)) continue;
        const double a = std::abs(alpha_row[j]);
        if (slack(j) / a <= bound && (a > best_abs || (a == best_abs && j < q))) {
          best_abs = a;
          q = j;
        }
      }
    }
    if (q < 0) {
      if (!fresh) {
        if (!refresh()) {
          status_ = LpStatus::kIterationLimit;
          break;
        }
        fresh = true;
        continue;
      }
      status_ = LpStatus::kInfeasible;
      break;
    }

    // Entering column.
    Column(q, column);
    std::fill(alpha_col.begin(), alpha_col.end(), 0.0);
    for (const auto& [i, v] : column) alpha_col[i] = v;
    lu_.Ftran(alpha_col);
    const double pivot = alpha_col[r];
    if (std::abs(pivot - alpha_row[q]) > 1e-7 * (1.0 + std::abs(pivot)) ||
        std::abs(pivot) <= opts_.pivot_tol) {
      if (!fresh) {
        if (!refresh()) {
          status_ = LpStatus::kIterationLimit;
          break;
        }
        fresh = true;
        continue;
      }
      if (std::abs(pivot) <= 1e-11) {
        diagnostics_ = fmt::format("numerical breakdown: pivot {:.3g}", pivot);
        status_ = LpStatus::kIterationLimit;
        break;
      }
    }

    // Dual steepest-edge reference vector.
    tau = rho;
    double rho_norm2 = 0.0;
    for (double v : rho) rho_norm2 += v * v;
    lu_.Ftran(tau);

    // Duals.
    const double theta_d = d_[q] / pivot;
    for (int j : touched) d_[j] -= theta_d * alpha_row[j];
    d_[leaving] = -theta_d;
    d_[q] = 0.0;

    // Primal.
    const double step = (x_[leaving] - target) / pivot;
    x_[q] += step;
    for (int i = 0; i < m_; ++i) {
      if (alpha_col[i] != 0.0) x_[basic_[i]] -= step * alpha_col[i];
    }
    x_[leaving] = target;

    // Weights.
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha_col[i] == 0.0) continue;
      const double ratio = alpha_col[i] / pivot;
      weights_[i] = std::max(
          weights_[i] - 2.0 * ratio * tau[i] + ratio * ratio * rho_norm2,
          kMinWeight);
    }
    weights_[r] = std::max(rho_norm2 / (pivot * pivot), kMinWeight);

    basic_[r] = q;
    position_[q] = r;
    position_[leaving] = -1;
    status_of_[q] = VarStatus::kBasic;
    status_of_[leaving] = to_lower ? VarStatus::kAtLower : VarStatus::kAtUpper;
    lu_.AddEta(r, alpha_col);
    ++iterations_;
    ++total_iterations_;
    fresh = false;
  }

  if (status_ == LpStatus::kOptimal) {
    const double pres = PrimalResidual();
    if (pres > 10 * ftol) {
      diagnostics_ = fmt::format("primal residual {:.3g} after solve", pres);
      status_ = LpStatus::kIterationLimit;
    }
  }
  if (opts_.debug) DumpState(LpStatusName(status_));
  return status_;
}

LpSolution SolveLp(const LinearProgram& lp,
                   std::span<const BoundOverride> overrides,
                   const Basis* warm_start, LpOptions options) {
  DualSimplex simplex(lp, options);
  for (const BoundOverride& o : overrides) {
    simplex.SetColumnBounds(o.column, o.lower, o.upper);
  }
  if (warm_start != nullptr) simplex.LoadBasis(*warm_start);
  LpSolution sol;
  sol.status = simplex.Solve();
  sol.values = simplex.values();
  sol.objective = simplex.objective();
  sol.basis = simplex.GetBasis();
  sol.iterations = simplex.iterations();
  sol.diagnostics = simplex.diagnostics();
  return sol;
}

}  // namespace pdpcd
