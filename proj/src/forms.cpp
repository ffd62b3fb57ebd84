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

#include "poroflux/forms.hpp"

#include "poroflux/errors.hpp"

namespace poroflux {

namespace kernels {

namespace {

int cell_count(const SpaceSet& s, Field f) { return static_cast<int>(s.mesh(f).cells.size()); }

}  // namespace

SparseMatrix mass(const SpaceSet& s, Field f, double scale, Execution exec) {
  const ScalarSpace& sc = s.scalar(f);
  const int nc = s.components(f);
  const Tabulation tab = Tabulation::volume(sc.order(), sc.dim());
  const SubMesh& mesh = s.mesh(f);
  return assemble_blocks(
      s.size(f), s.size(f), cell_count(s, f),
      [&](int c, LocalBlock& lb) {
        const CellBasis cb(tab, mesh.cells[c], sc.dim());
        const int n = cb.num_nodes();
        lb.reset(nc * n, nc * n);
        field_cell_dofs(s, f, mesh.cells[c], lb.rows);
        lb.cols = lb.rows;
        for (int q = 0; q < cb.num_points(); ++q) {
          const double w = scale * cb.jxw(q);
          for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
              const double v = w * cb.value(q, a) * cb.value(q, b);
              for (int comp = 0; comp < nc; ++comp) lb.at(comp * n + b, comp * n + a) += v;
            }
        }
      },
      exec);
}

SparseMatrix gradient_gram(const SpaceSet& s, Field f, double scale, Execution exec) {
  const ScalarSpace& sc = s.scalar(f);
  const int nc = s.components(f);
  const int d = sc.dim();
  const Tabulation tab = Tabulation::volume(sc.order(), d);
  const SubMesh& mesh = s.mesh(f);
  return assemble_blocks(
      s.size(f), s.size(f), cell_count(s, f),
      [&](int c, LocalBlock& lb) {
        const CellBasis cb(tab, mesh.cells[c], d);
        const int n = cb.num_nodes();
        lb.reset(nc * n, nc * n);
        field_cell_dofs(s, f, mesh.cells[c], lb.rows);
        lb.cols = lb.rows;
        for (int q = 0; q < cb.num_points(); ++q) {
          const double w = scale * cb.jxw(q);
          for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
              double g = 0.0;
              for (int i = 0; i < d; ++i) g += cb.grad(q, a, i) * cb.grad(q, b, i);
              for (int comp = 0; comp < nc; ++comp) lb.at(comp * n + b, comp * n + a) += w * g;
            }
        }
      },
      exec);
}

SparseMatrix elasticity(const SpaceSet& s, Field f, double mu, double lambda, Execution exec) {
  const ScalarSpace& sc = s.scalar(f);
  const int d = sc.dim();
  if (s.components(f) != d) throw SpaceError("elasticity needs a vector field");
  const Tabulation tab = Tabulation::volume(sc.order(), d);
  const SubMesh& mesh = s.mesh(f);
  return assemble_blocks(
      s.size(f), s.size(f), cell_count(s, f),
      [&](int c, LocalBlock& lb) {
        const CellBasis cb(tab, mesh.cells[c], d);
        const int n = cb.num_nodes();
        lb.reset(d * n, d * n);
        field_cell_dofs(s, f, mesh.cells[c], lb.rows);
        lb.cols = lb.rows;
        for (int q = 0; q < cb.num_points(); ++q) {
          const double w = cb.jxw(q);
          for (int b = 0; b < n; ++b) {
            double gb[3] = {cb.grad(q, b, 0), cb.grad(q, b, 1), d == 3 ? cb.grad(q, b, 2) : 0.0};
            for (int a = 0; a < n; ++a) {
              double ga[3] = {cb.grad(q, a, 0), cb.grad(q, a, 1), d == 3 ? cb.grad(q, a, 2) : 0.0};
              const double dot = ga[0] * gb[0] + ga[1] * gb[1] + ga[2] * gb[2];
              for (int e = 0; e < d; ++e)
                for (int cc = 0; cc < d; ++cc) {
                  double v = mu * ga[e] * gb[cc] + lambda * ga[cc] * gb[e];
                  if (cc == e) v += mu * dot;
                  lb.at(e * n + b, cc * n + a) += w * v;
                }
            }
          }
        }
      },
      exec);
}

SparseMatrix divergence_rows_scalar(const SpaceSet& s, Field scalar, Field vec, double scale,
                                    Execution exec) {
  const ScalarSpace& ss = s.scalar(scalar);
  const ScalarSpace& vs = s.scalar(vec);
  const int d = vs.dim();
  const SubMesh& mesh = s.mesh(vec);
  if (&mesh != &s.mesh(scalar)) throw SpaceError("divergence pairing across boxes");
  const Tabulation ts = Tabulation::volume(ss.order(), d);
  const Tabulation tv = Tabulation::volume(vs.order(), d);
  return assemble_blocks(
      s.size(scalar), s.size(vec), cell_count(s, vec),
      [&](int c, LocalBlock& lb) {
        const Cell& cell = mesh.cells[c];
        const CellBasis bs(ts, cell, d), bv(tv, cell, d);
        const int ns = bs.num_nodes(), nv = bv.num_nodes();
        lb.reset(ns, d * nv);
        field_cell_dofs(s, scalar, cell, lb.rows);
        field_cell_dofs(s, vec, cell, lb.cols);
        for (int q = 0; q < bv.num_points(); ++q) {
          const double w = scale * bv.jxw(q);
          for (int b = 0; b < ns; ++b)
            for (int cc = 0; cc < d; ++cc)
              for (int a = 0; a < nv; ++a) lb.at(b, cc * nv + a) += w * bs.value(q, b) * bv.grad(q, a, cc);
        }
      },
      exec);
}

SparseMatrix divergence_rows_vector(const SpaceSet& s, Field vec, Field scalar, double scale,
                                    Execution exec) {
  const ScalarSpace& ss = s.scalar(scalar);
  const ScalarSpace& vs = s.scalar(vec);
  const int d = vs.dim();
  const SubMesh& mesh = s.mesh(vec);
  if (&mesh != &s.mesh(scalar)) throw SpaceError("divergence pairing across boxes");
  const Tabulation ts = Tabulation::volume(ss.order(), d);
  const Tabulation tv = Tabulation::volume(vs.order(), d);
  return assemble_blocks(
      s.size(vec), s.size(scalar), cell_count(s, vec),
      [&](int c, LocalBlock& lb) {
        const Cell& cell = mesh.cells[c];
        const CellBasis bs(ts, cell, d), bv(tv, cell, d);
        const int ns = bs.num_nodes(), nv = bv.num_nodes();
        lb.reset(d * nv, ns);
        field_cell_dofs(s, vec, cell, lb.rows);
        field_cell_dofs(s, scalar, cell, lb.cols);
        for (int q = 0; q < bv.num_points(); ++q) {
          const double w = scale * bv.jxw(q);
          for (int e = 0; e < d; ++e)
            for (int b = 0; b < nv; ++b)
              for (int a = 0; a < ns; ++a) lb.at(e * nv + b, a) += w * bv.grad(q, b, e) * bs.value(q, a);
        }
      },
      exec);
}

SparseMatrix strain_gram(const SpaceSet& s, Field f, double scale, Execution exec) {
  const ScalarSpace& sc = s.scalar(f);
  const int d = sc.dim();
  const Tabulation tab = Tabulation::volume(sc.order(), d);
  const SubMesh& mesh = s.mesh(f);
  return assemble_blocks(
      s.size(f), s.size(f), cell_count(s, f),
      [&](int c, LocalBlock& lb) {
        const CellBasis cb(tab, mesh.cells[c], d);
        const int n = cb.num_nodes();
        lb.reset(d * n, d * n);
        field_cell_dofs(s, f, mesh.cells[c], lb.rows);
        lb.cols = lb.rows;
        for (int q = 0; q < cb.num_points(); ++q) {
          const double w = 0.5 * scale * cb.jxw(q);
          for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
              double dot = 0.0;
              for (int i = 0; i < d; ++i) dot += cb.grad(q, a, i) * cb.grad(q, b, i);
              for (int e = 0; e < d; ++e)
                for (int cc = 0; cc < d; ++cc) {
                  double v = cb.grad(q, a, e) * cb.grad(q, b, cc);
                  if (cc == e) v += dot;
                  lb.at(e * n + b, cc * n + a) += w * v;
                }
            }
        }
      },
      exec);
}

SparseMatrix interface_pairing(const SpaceSet& s, Field row, Field col,
                               const std::vector<std::pair<int, int>>& comps, double scale,
                               Execution exec) {
  const InterfaceMap imap = interface_map(s.grid());
  const int d = s.dim();
  const ScalarSpace& rs = s.scalar(row);
  const ScalarSpace& cs = s.scalar(col);
  const bool row_biot = s.mesh(row).side == Side::Biot;
  const bool col_biot = s.mesh(col).side == Side::Biot;
  const Tabulation tr = Tabulation::face(rs.order(), d, row_biot ? 0.0 : 1.0);
  const Tabulation tc = Tabulation::face(cs.order(), d, col_biot ? 0.0 : 1.0);
  const int nrc = s.components(row), ncc = s.components(col);
  return assemble_blocks(
      s.size(row), s.size(col), static_cast<int>(imap.pairs.size()),
      [&](int i, LocalBlock& lb) {
        const auto& pr = imap.pairs[i];
        const Cell& rcell = s.mesh(row).cells[row_biot ? pr.cell_b : pr.cell_f];
        const Cell& ccell = s.mesh(col).cells[col_biot ? pr.cell_b : pr.cell_f];
        const CellBasis br(tr, rcell, d, true), bc(tc, ccell, d, true);
        const int nr = br.num_nodes(), nc = bc.num_nodes();
        lb.reset(nrc * nr, ncc * nc);
        field_cell_dofs(s, row, rcell, lb.rows);
        field_cell_dofs(s, col, ccell, lb.cols);
        for (int q = 0; q < br.num_points(); ++q) {
          const double w = scale * br.jxw(q);
          for (int b = 0; b < nr; ++b)
            for (int a = 0; a < nc; ++a) {
              const double v = w * br.value(q, b) * bc.value(q, a);
              for (const auto& [re, ce] : comps) lb.at(re * nr + b, ce * nc + a) += v;
            }
        }
      },
      exec);
}

}  // namespace kernels

int FormSet::offset(Field f) const {
  switch (f) {
    case Field::U: return 0;
    case Field::W: return size(Field::U);
    case Field::P: return 2 * size(Field::U);
    case Field::V: return 2 * size(Field::U) + size(Field::P);
    case Field::Pi: return state_size();
  }
  return 0;
}

int FormSet::state_size() const { return 2 * size(Field::U) + size(Field::P) + size(Field::V); }

FormSet assemble_forms(std::shared_ptr<const SpaceSet> spaces, const MaterialParams& params,
                       Execution exec) {
  params.validate();
  if (!spaces) throw SpaceError("null space set");
  FormSet f;
  f.spaces = spaces;
  f.params = params;
  const SpaceSet& s = *spaces;
  f.elastic = kernels::elasticity(s, Field::U, params.mu, params.lambda, exec);
  f.mass_u = kernels::mass(s, Field::U, 1.0, exec);
  f.mass_p = kernels::mass(s, Field::P, 1.0, exec);
  f.mass_v = kernels::mass(s, Field::V, 1.0, exec);
  f.mass_pi = kernels::mass(s, Field::Pi, 1.0, exec);
  f.mass_b = params.rho_b * f.mass_u;
  f.mass_c0 = params.c0 * f.mass_p;
  if (params.c0 == 0.0) f.mass_c0.prune(0.0);
  f.mass_f = params.rho_f * f.mass_v;
  f.gradient_p = kernels::gradient_gram(s, Field::P, 1.0, exec);
  f.diffusion = params.k * f.gradient_p;
  f.coupling_u = kernels::divergence_rows_vector(s, Field::U, Field::P, -params.alpha, exec);
  f.coupling_p = kernels::divergence_rows_scalar(s, Field::P, Field::W, params.alpha, exec);
  f.strain_gram_v = kernels::strain_gram(s, Field::V, 1.0, exec);
  f.gradient_v = kernels::gradient_gram(s, Field::V, 1.0, exec);
  f.viscous = (2.0 * params.nu) * f.strain_gram_v;
  f.divergence = kernels::divergence_rows_scalar(s, Field::Pi, Field::V, -1.0, exec);
  f.x_gram = assemble_x_gram(f);
  return f;
}

SparseMatrix assemble_x_gram(const FormSet& f) {
  const int nu = f.size(Field::U), np = f.size(Field::P), nv = f.size(Field::V);
  return stack_blocks({{&f.elastic, nullptr, nullptr, nullptr},
                       {nullptr, &f.mass_b, nullptr, nullptr},
                       {nullptr, nullptr, &f.mass_c0, nullptr},
                       {nullptr, nullptr, nullptr, &f.mass_f}},
                      {nu, nu, np, nv}, {nu, nu, np, nv});
}

InterfaceSet assemble_interface(const SpaceSet& s, const MaterialParams& params, Execution exec) {
  params.validate();
  const int d = s.dim();
  const int n = d - 1;
  std::vector<std::pair<int, int>> normal{{n, n}}, tangent;
  for (int t = 0; t < d - 1; ++t) tangent.emplace_back(t, t);
  const double b = params.beta;
  InterfaceSet is;
  is.pn_u = kernels::interface_pairing(s, Field::U, Field::P, {{n, 0}}, -1.0, exec);
  is.pn_v = kernels::interface_pairing(s, Field::V, Field::P, {{n, 0}}, 1.0, exec);
  is.pq_u = kernels::interface_pairing(s, Field::P, Field::W, {{0, n}}, 1.0, exec);
  is.pq_v = kernels::interface_pairing(s, Field::P, Field::V, {{0, n}}, -1.0, exec);
  is.s_ww = kernels::interface_pairing(s, Field::U, Field::W, tangent, b, exec);
  is.s_wv = kernels::interface_pairing(s, Field::U, Field::V, tangent, -b, exec);
  is.s_vw = kernels::interface_pairing(s, Field::V, Field::W, tangent, -b, exec);
  is.s_vv = kernels::interface_pairing(s, Field::V, Field::V, tangent, b, exec);
  is.trace_mass_u = kernels::interface_pairing(s, Field::U, Field::U, normal, 1.0, exec);
  is.trace_mass_p = kernels::interface_pairing(s, Field::P, Field::P, {{0, 0}}, 1.0, exec);
  return is;
}

SparseMatrix stack_blocks(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                          const std::vector<int>& row_sizes, const std::vector<int>& col_sizes,
                          const std::vector<std::vector<double>>& scales) {
  std::vector<int> ro(row_sizes.size() + 1, 0), co(col_sizes.size() + 1, 0);
  for (size_t i = 0; i < row_sizes.size(); ++i) ro[i + 1] = ro[i] + row_sizes[i];
  for (size_t j = 0; j < col_sizes.size(); ++j) co[j + 1] = co[j] + col_sizes[j];
  std::vector<Triplet> trips;
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = 0; j < blocks[i].size(); ++j) {
      const SparseMatrix* m = blocks[i][j];
      if (m == nullptr) continue;
      if (m->rows() != row_sizes[i] || m->cols() != col_sizes[j])
        throw SpaceError("block (" + std::to_string(i) + "," + std::to_string(j) + ") has shape " +
                         std::to_string(m->rows()) + "x" + std::to_string(m->cols()) + ", expected " +
                         std::to_string(row_sizes[i]) + "x" + std::to_string(col_sizes[j]));
      const double sc = scales.empty() ? 1.0 : scales[i][j];
      for (int r = 0; r < m->outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(*m, r); it; ++it)
          trips.emplace_back(ro[i] + it.row(), co[j] + it.col(), sc * it.value());
    }
  SparseMatrix out(ro.back(), co.back());
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

}  // namespace poroflux
