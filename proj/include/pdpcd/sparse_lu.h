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

// Sparse LU factorization of a simplex basis with product-form updates.
//
// The basis is given column by column; columns are addressed by basis
// position, rows by constraint index. Pivots are chosen with a Markowitz
// style rule (fewest entries in the pivot column, then in the pivot row)
// under threshold partial pivoting. Basis changes are appended as eta
// columns until the next Factorize().

#ifndef PDPCD_SPARSE_LU_H_
#define PDPCD_SPARSE_LU_H_

#include <utility>
#include <vector>

namespace pdpcd {

using SparseColumn = std::vector<std::pair<int, double>>;

class SparseLu {
 public:
  struct Deficiency {
    std::vector<int> positions;  // basis positions left without a pivot
    std::vector<int> rows;       // rows left without a pivot
  };

  // Factorizes the m x m matrix whose column p is columns[p]. On numerical
  // singularity the factorization is incomplete and the returned deficiency
  // lists the positions and rows to be repaired (same length); the caller
  // replaces those columns and factorizes again.
  Deficiency Factorize(const std::vector<SparseColumn>& columns);

  // In place: on entry rhs is indexed by row, on exit by basis position.
  void Ftran(std::vector<double>& rhs) const;
  // In place: on entry rhs is indexed by basis position, on exit by row.
  void Btran(std::vector<double>& rhs) const;

  // Records the basis change where position r receives a column whose
  // FTRAN image is `alpha` (dense, indexed by position).
  void AddEta(int r, const std::vector<double>& alpha);
  int num_etas() const { return static_cast<int>(eta_pivot_.size()); }
  int dimension() const { return m_; }

 private:
  int m_ = 0;
  // Elimination order.
  std::vector<int> pivot_row_;
  std::vector<int> pivot_pos_;
  std::vector<double> diag_;
  // L multipliers per elimination step, CSR over steps.
  std::vector<int> l_start_;
  std::vector<int> l_row_;
  std::vector<double> l_value_;
  // U rows per elimination step (off-diagonal, by basis position).
  std::vector<int> u_start_;
  std::vector<int> u_pos_;
  std::vector<double> u_value_;
  // Eta file.
  std::vector<int> eta_pivot_;
  std::vector<double> eta_pivot_value_;
  std::vector<int> eta_start_;
  std::vector<int> eta_pos_;
  std::vector<double> eta_value_;
};

}  // namespace pdpcd

#endif  // PDPCD_SPARSE_LU_H_
