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

#include "pdpcd/sparse_lu.h"

#include <algorithm>
#include <cmath>

namespace pdpcd {

namespace {

constexpr double kZeroPivot = 1e-10;
constexpr double kThreshold = 0.01;
constexpr double kDrop = 1e-14;
constexpr int kColumnCandidates = 4;

}  // namespace

SparseLu::Deficiency SparseLu::Factorize(
    const std::vector<SparseColumn>& columns) {
  m_ = static_cast<int>(columns.size());
  const int m = m_;
  pivot_row_.clear();
  pivot_pos_.clear();
  diag_.clear();
  l_start_.assign(1, 0);
  l_row_.clear();
  l_value_.clear();
  u_start_.assign(1, 0);
  u_pos_.clear();
  u_value_.clear();
  eta_pivot_.clear();
  eta_pivot_value_.clear();
  eta_start_.assign(1, 0);
  eta_pos_.clear();
  eta_value_.clear();

  // Active submatrix, row-wise with column patterns.
  std::vector<std::vector<int>> row_pos(m);
  std::vector<std::vector<double>> row_val(m);
  std::vector<std::vector<int>> col_rows(m);
  std::vector<int> col_count(m, 0);
  for (int p = 0; p < m; ++p) {
    for (const auto& [r, v] : columns[p]) {
      if (v == 0.0) continue;
      row_pos[r].push_back(p);
      row_val[r].push_back(v);
      col_rows[p].push_back(r);
      ++col_count[p];
    }
  }
  std::vector<char> row_active(m, 1);
  std::vector<char> col_active(m, 1);
  std::vector<double> work(m, 0.0);
  std::vector<int> in_pivot_row(m, -1);
  std::vector<int> visited(m, -1);
  int visit_stamp = 0;

  auto value_at = [&](int r, int p) -> double {
    const auto& pos = row_pos[r];
    for (std::size_t e = 0; e < pos.size(); ++e) {
      if (pos[e] == p) return row_val[r][e];
    }
    return 0.0;
  };
  auto drop_column = [&](int p) {
    col_active[p] = 0;
    for (int r : col_rows[p]) {
      if (!row_active[r]) continue;
      auto& pos = row_pos[r];
      for (std::size_t e = 0; e < pos.size(); ++e) {
        if (pos[e] == p) {
          pos[e] = pos.back();
          pos.pop_back();
          row_val[r][e] = row_val[r].back();
          row_val[r].pop_back();
          break;
        }
      }
    }
  };

  Deficiency deficiency;
  int remaining = m;
  while (remaining > 0) {
    // Candidate columns: active ones with the fewest active entries.
    int min_count = m + 1;
    for (int p = 0; p < m; ++p) {
      if (col_active[p] && col_count[p] < min_count) min_count = col_count[p];
    }
    if (min_count == 0) {
      for (int p = 0; p < m; ++p) {
        if (col_active[p] && col_count[p] == 0) {
          deficiency.positions.push_back(p);
          drop_column(p);
          --remaining;
        }
      }
      continue;
    }
    int best_row = -1;
    int best_pos = -1;
    double best_val = 0.0;
    long best_merit = -1;
    int examined = 0;
    for (int p = 0; p < m && examined < kColumnCandidates; ++p) {
      if (!col_active[p] || col_count[p] > min_count + 1) continue;
      ++examined;
      double col_max = 0.0;
      for (int r : col_rows[p]) {
        if (row_active[r]) col_max = std::max(col_max, std::abs(value_at(r, p)));
      }
      if (col_max <= kZeroPivot) continue;
      for (int r : col_rows[p]) {
        if (!row_active[r]) continue;
        const double v = value_at(r, p);
        if (std::abs(v) < kThreshold * col_max || std::abs(v) <= kZeroPivot) {
          continue;
        }
        const long merit = static_cast<long>(row_pos[r].size() - 1) *
                           static_cast<long>(col_count[p] - 1);
        if (best_row < 0 || merit < best_merit ||
            (merit == best_merit && std::abs(v) > std::abs(best_val))) {
          best_row = r;
          best_pos = p;
          best_val = v;
          best_merit = merit;
        }
      }
    }
    if (best_row < 0) {
      // Every candidate column is numerically zero; declare the first one
      // deficient and keep going.
      for (int p = 0; p < m; ++p) {
        if (col_active[p] && col_count[p] <= min_count + 1) {
          deficiency.positions.push_back(p);
          drop_column(p);
          --remaining;
          break;
        }
      }
      continue;
    }

    const int pr = best_row;
    const int pc = best_pos;
    const double piv = best_val;
    for (std::size_t e = 0; e < row_pos[pr].size(); ++e) {
      const int p = row_pos[pr][e];
      if (p == pc) continue;
      work[p] = row_val[pr][e];
      in_pivot_row[p] = pr;
    }
    for (int r : col_rows[pc]) {
      if (!row_active[r] || r == pr) continue;
      auto& pos = row_pos[r];
      auto& val = row_val[r];
      double v_rc = 0.0;
      for (std::size_t e = 0; e < pos.size(); ++e) {
        if (pos[e] == pc) {
          v_rc = val[e];
          pos[e] = pos.back();
          pos.pop_back();
          val[e] = val.back();
          val.pop_back();
          break;
        }
      }
      if (v_rc == 0.0) continue;
      const double mult = v_rc / piv;
      l_row_.push_back(r);
      l_value_.push_back(mult);
      ++visit_stamp;
      for (std::size_t e = 0; e < pos.size(); ++e) {
        const int p = pos[e];
        if (in_pivot_row[p] == pr) {
          val[e] -= mult * work[p];
          visited[p] = visit_stamp;
        }
      }
      for (int p : row_pos[pr]) {
        if (p == pc || visited[p] == visit_stamp) continue;
        const double fill = -mult * work[p];
        if (std::abs(fill) < kDrop) continue;
        pos.push_back(p);
        val.push_back(fill);
        col_rows[p].push_back(r);
        ++col_count[p];
      }
    }
    l_start_.push_back(static_cast<int>(l_row_.size()));

    for (std::size_t e = 0; e < row_pos[pr].size(); ++e) {
      const int p = row_pos[pr][e];
      --col_count[p];
      if (p == pc) continue;
      u_pos_.push_back(p);
      u_value_.push_back(row_val[pr][e]);
      in_pivot_row[p] = -1;
      work[p] = 0.0;
    }
    u_start_.push_back(static_cast<int>(u_pos_.size()));
    pivot_row_.push_back(pr);
    pivot_pos_.push_back(pc);
    diag_.push_back(piv);
    row_active[pr] = 0;
    col_active[pc] = 0;
    row_pos[pr].clear();
    row_val[pr].clear();
    --remaining;
  }

  for (int r = 0; r < m; ++r) {
    if (row_active[r]) deficiency.rows.push_back(r);
  }
  return deficiency;
}

void SparseLu::Ftran(std::vector<double>& rhs) const {
  const int steps = static_cast<int>(pivot_row_.size());
  for (int k = 0; k < steps; ++k) {
    const double b = rhs[pivot_row_[k]];
    if (b == 0.0) continue;
    for (int e = l_start_[k]; e < l_start_[k + 1]; ++e) {
      rhs[l_row_[e]] -= l_value_[e] * b;
    }
  }
  std::vector<double> x(m_, 0.0);
  for (int k = steps - 1; k >= 0; --k) {
    double sum = rhs[pivot_row_[k]];
    for (int e = u_start_[k]; e < u_start_[k + 1]; ++e) {
      sum -= u_value_[e] * x[u_pos_[e]];
    }
    x[pivot_pos_[k]] = sum / diag_[k];
  }
  for (int t = 0; t < num_etas(); ++t) {
    const int r = eta_pivot_[t];
    const double xr = x[r] / eta_pivot_value_[t];
    x[r] = xr;
    if (xr == 0.0) continue;
    for (int e = eta_start_[t]; e < eta_start_[t + 1]; ++e) {
      x[eta_pos_[e]] -= eta_value_[e] * xr;
    }
  }
  rhs.swap(x);
}

void SparseLu::Btran(std::vector<double>& rhs) const {
  for (int t = num_etas() - 1; t >= 0; --t) {
    const int r = eta_pivot_[t];
    double sum = rhs[r];
    for (int e = eta_start_[t]; e < eta_start_[t + 1]; ++e) {
      sum -= eta_value_[e] * rhs[eta_pos_[e]];
    }
    rhs[r] = sum / eta_pivot_value_[t];
  }
  const int steps = static_cast<int>(pivot_row_.size());
  std::vector<double> v(m_, 0.0);
  for (int k = 0; k < steps; ++k) {
    const double vk = rhs[pivot_pos_[k]] / diag_[k];
    v[pivot_row_[k]] = vk;
    if (vk == 0.0) continue;
    for (int e = u_start_[k]; e < u_start_[k + 1]; ++e) {
      rhs[u_pos_[e]] -= u_value_[e] * vk;
    }
  }
  for (int k = steps - 1; k >= 0; --k) {
    double sum = v[pivot_row_[k]];
    for (int e = l_start_[k]; e < l_start_[k + 1]; ++e) {
      sum -= l_value_[e] * v[l_row_[e]];
    }
    v[pivot_row_[k]] = sum;
  }
  rhs.swap(v);
}

void SparseLu::AddEta(int r, const std::vector<double>& alpha) {
  eta_pivot_.push_back(r);
  eta_pivot_value_.push_back(alpha[r]);
  for (int i = 0; i < m_; ++i) {
    if (i == r || std::abs(alpha[i]) < kDrop) continue;
    eta_pos_.push_back(i);
    eta_value_.push_back(alpha[i]);
  }
  eta_start_.push_back(static_cast<int>(eta_pos_.size()));
}

}  // namespace pdpcd
