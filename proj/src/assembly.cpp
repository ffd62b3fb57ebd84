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

#include "poroflux/assembly.hpp"

#include <cmath>

#include "poroflux/errors.hpp"

namespace poroflux {

SparseMatrix assemble_blocks(int nrows, int ncols, int nitems,
                             const std::function<void(int, LocalBlock&)>& kernel, Execution exec) {
  std::vector<LocalBlock> blocks(nitems);
  parallel_for(nitems, exec, [&](std::ptrdiff_t i) { kernel(static_cast<int>(i), blocks[i]); });
  size_t nnz = 0;
  for (const auto& b : blocks) nnz += b.values.size();
  std::vector<Triplet> trips;
  trips.reserve(nnz);
  for (const auto& b : blocks) {
    const size_t nc = b.cols.size();
    for (size_t r = 0; r < b.rows.size(); ++r) {
      if (b.rows[r] < 0) continue;
      for (size_t c = 0; c < nc; ++c) {
        if (b.cols[c] < 0) continue;
        const double v = b.values[r * nc + c];
        if (v != 0.0) trips.emplace_back(b.rows[r], b.cols[c], v);
      }
    }
  }
  SparseMatrix m(nrows, ncols);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

Vector assemble_vector(int n, int nitems, const std::function<void(int, LocalVector&)>& kernel,
                       Execution exec) {
  std::vector<LocalVector> locals(nitems);
  parallel_for(nitems, exec, [&](std::ptrdiff_t i) { kernel(static_cast<int>(i), locals[i]); });
  Vector out = Vector::Zero(n);
  for (const auto& l : locals)
    for (size_t a = 0; a < l.dofs.size(); ++a)
      if (l.dofs[a] >= 0) out[l.dofs[a]] += l.values[a];
  return out;
}

double reduce_sum(int nitems, const std::function<double(int)>& term, Execution exec) {
  std::vector<double> parts(nitems, 0.0);
  parallel_for(nitems, exec, [&](std::ptrdiff_t i) { parts[i] = term(static_cast<int>(i)); });
  double s = 0.0;
  for (double p : parts) s += p;
  return s;
}

CellBasis::CellBasis(const Tabulation& tab, const Cell& cell, int dim, bool face)
    : tab_(&tab), nloc_(tab.num_nodes()), nq_(tab.num_points()), dim_(dim), lo_(cell.lo) {
  h_ = {1, 1, 1};
  inv_h_ = {1, 1, 1};
  measure_ = 1.0;
  for (int i = 0; i < dim; ++i) {
    h_[i] = cell.hi[i] - cell.lo[i];
    inv_h_[i] = 1.0 / h_[i];
    if (!(face && i == dim - 1)) measure_ *= h_[i];
  }
}

Point CellBasis::point(int q) const {
  const Point& r = tab_->point(q);
  Point x{0, 0, 0};
  for (int i = 0; i < dim_; ++i) x[i] = lo_[i] + h_[i] * r[i];
  return x;
}

void field_cell_dofs(const SpaceSet& spaces, Field f, const Cell& cell, std::vector<int>& out) {
  const ScalarSpace& s = spaces.scalar(f);
  const int nc = spaces.components(f);
  const int nloc = s.nodes_per_cell();
  std::vector<int> scalar;
  s.cell_dofs(cell, scalar);
  out.assign(static_cast<size_t>(nc) * nloc, -1);
  for (int c = 0; c < nc; ++c)
    for (int a = 0; a < nloc; ++a)
      out[c * nloc + a] = scalar[a] < 0 ? -1 : c * s.num_free() + scalar[a];
}

Vector assemble_volume_load(const SpaceSet& spaces, Field f, const FieldFunction& F, Execution exec) {
  const ScalarSpace& s = spaces.scalar(f);
  const SubMesh& mesh = spaces.mesh(f);
  const int nc = spaces.components(f);
  const Tabulation tab = Tabulation::volume(s.order(), s.dim());
  return assemble_vector(
      spaces.size(f), static_cast<int>(mesh.cells.size()),
      [&](int c, LocalVector& lv) {
        const Cell& cell = mesh.cells[c];
        field_cell_dofs(spaces, f, cell, lv.dofs);
        lv.values.assign(lv.dofs.size(), 0.0);
        const CellBasis cb(tab, cell, s.dim());
        const int nloc = cb.num_nodes();
        double val[3];
        for (int q = 0; q < cb.num_points(); ++q) {
          F(cb.point(q), val);
          for (int comp = 0; comp < nc; ++comp)
            for (int a = 0; a < nloc; ++a) lv.values[comp * nloc + a] += cb.jxw(q) * val[comp] * cb.value(q, a);
        }
      },
      exec);
}

Vector assemble_interface_load(const SpaceSet& spaces, Field f, const FieldFunction& g, Execution exec) {
  const ScalarSpace& s = spaces.scalar(f);
  const SubMesh& mesh = spaces.mesh(f);
  const int nc = spaces.components(f);
  const bool biot = mesh.side == Side::Biot;
  const Tabulation tab = Tabulation::face(s.order(), s.dim(), biot ? 0.0 : 1.0);
  const auto facets = mesh.facets_at(0.0);
  return assemble_vector(
      spaces.size(f), static_cast<int>(facets.size()),
      [&](int i, LocalVector& lv) {
        const Cell& cell = mesh.cells[facets[i].cell];
        field_cell_dofs(spaces, f, cell, lv.dofs);
        lv.values.assign(lv.dofs.size(), 0.0);
        const CellBasis cb(tab, cell, s.dim(), true);
        const int nloc = cb.num_nodes();
        double val[3];
        for (int q = 0; q < cb.num_points(); ++q) {
          g(cb.point(q), val);
          for (int comp = 0; comp < nc; ++comp)
            for (int a = 0; a < nloc; ++a) lv.values[comp * nloc + a] += cb.jxw(q) * val[comp] * cb.value(q, a);
        }
      },
      exec);
}

Eigen::MatrixXd to_dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

}  // namespace poroflux
