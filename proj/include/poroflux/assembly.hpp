// Copyright 2026 The poroflux Authors
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

#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "poroflux/basis.hpp"
#include "poroflux/parallel.hpp"
#include "poroflux/spaces.hpp"

namespace poroflux {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

/// Dense local matrix with its global row/column dofs (-1 marks a constrained dof).
struct LocalBlock {
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<double> values;  ///< row-major, rows.size() x cols.size()

  void reset(int nr, int nc) {
    rows.assign(nr, -1);
    cols.assign(nc, -1);
    values.assign(static_cast<size_t>(nr) * nc, 0.0);
  }
  double& at(int r, int c) { return values[static_cast<size_t>(r) * cols.size() + c]; }
};

/// Local vector with its global dofs.
struct LocalVector {
  std::vector<int> dofs;
  std::vector<double> values;
};

/// Assembles sum over items of local blocks. Local blocks may be computed
/// concurrently; they are always scattered in item order, so the serial and
/// parallel paths agree bit for bit.
SparseMatrix assemble_blocks(int nrows, int ncols, int nitems,
                             const std::function<void(int, LocalBlock&)>& kernel, Execution exec);

Vector assemble_vector(int n, int nitems, const std::function<void(int, LocalVector&)>& kernel,
                       Execution exec);

/// Sum of floating-point contributions computed per item, reduced in item order.
double reduce_sum(int nitems, const std::function<double(int)>& term, Execution exec);

/// Shape functions of one space mapped onto an axis-aligned box cell.
class CellBasis {
 public:
  CellBasis(const Tabulation& tab, const Cell& cell, int dim, bool face = false);

  int num_nodes() const { return nloc_; }
  int num_points() const { return nq_; }
  double value(int q, int a) const { return tab_->value(q, a); }
  double grad(int q, int a, int i) const { return tab_->grad(q, a, i) * inv_h_[i]; }
  double hess(int q, int a, int i, int j) const { return tab_->hess(q, a, i, j) * inv_h_[i] * inv_h_[j]; }
  double jxw(int q) const { return tab_->weight(q) * measure_; }
  Point point(int q) const;

 private:
  const Tabulation* tab_;
  int nloc_;
  int nq_;
  int dim_;
  Point lo_;
  Point h_;
  Point inv_h_;
  double measure_;
};

/// Local-to-global dof list of a (possibly vector) field on a cell.
/// Local index is comp * nodes_per_cell + node.
void field_cell_dofs(const SpaceSet& spaces, Field f, const Cell& cell, std::vector<int>& out);

/// Volume load vector: integral of F . phi over the field's box.
Vector assemble_volume_load(const SpaceSet& spaces, Field f, const FieldFunction& F,
                            Execution exec = Execution::Serial);

/// Interface load vector: integral over the interface of g . phi, using the
/// field's trace from its own box.
Vector assemble_interface_load(const SpaceSet& spaces, Field f, const FieldFunction& g,
                               Execution exec = Execution::Serial);

/// Convenience conversions between the sparse types and dense matrices.
Eigen::MatrixXd to_dense(const SparseMatrix& m);

}  // namespace poroflux
