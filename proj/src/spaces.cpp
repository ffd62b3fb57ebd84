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

#include "poroflux/spaces.hpp"

#include <cmath>

#include "poroflux/basis.hpp"
#include "poroflux/errors.hpp"

namespace poroflux {

std::string to_string(ElementFamily f) { return f == ElementFamily::Q1 ? "Q1" : "Q2"; }

ElementFamily parse_family(const std::string& s) {
  if (s == "Q1" || s == "q1" || s == "1") return ElementFamily::Q1;
  if (s == "Q2" || s == "q2" || s == "2") return ElementFamily::Q2;
  throw SpaceError("unknown element family '" + s + "' (expected Q1 or Q2)");
}

std::string to_string(Field f) {
  switch (f) {
    case Field::U: return "u";
    case Field::W: return "w";
    case Field::P: return "p_b";
    case Field::V: return "v";
    case Field::Pi: return "pi";
  }
  return "?";
}

ScalarSpace::ScalarSpace(const SubMesh& mesh, int order, bool dirichlet_top, bool dirichlet_bottom)
    : side_(mesh.side), order_(order), dim_(mesh.dim) {
  if (order != 1 && order != 2) throw SpaceError("element order must be 1 or 2");
  nloc_ = 1;
  for (int i = 0; i < dim_; ++i) nloc_ *= order + 1;
  const Point h = mesh.cell_size();
  origin_ = {0, 0, 0};
  origin_[dim_ - 1] = mesh.z_lo;
  node_spacing_ = {1, 1, 1};
  for (int i = 0; i < dim_; ++i) {
    lattice_[i] = order * mesh.cells_per_dir[i] + 1;
    node_spacing_[i] = h[i] / order;
  }
  const int n = lattice_[0] * lattice_[1] * lattice_[2];
  leader_.resize(n);
  dirichlet_.assign(n, 0);
  const int vert = dim_ - 1;
  for (int r = 0; r < n; ++r) {
    auto idx = raw_lattice_index(r);
    if (dirichlet_top && idx[vert] == lattice_[vert] - 1) dirichlet_[r] = 1;
    if (dirichlet_bottom && idx[vert] == 0) dirichlet_[r] = 1;
    for (int j = 0; j < vert; ++j)
      if (idx[j] == lattice_[j] - 1) idx[j] = 0;
    leader_[r] = raw_index(idx[0], idx[1], idx[2]);
  }
  free_of_raw_.assign(n, -1);
  for (int r = 0; r < n; ++r) {
    if (leader_[r] != r || dirichlet_[r]) continue;
    free_of_raw_[r] = static_cast<int>(raw_of_free_.size());
    raw_of_free_.push_back(r);
  }
  for (int r = 0; r < n; ++r)
    if (leader_[r] != r) free_of_raw_[r] = dirichlet_[r] ? -1 : free_of_raw_[leader_[r]];
}

std::array<int, 3> ScalarSpace::raw_lattice_index(int raw) const {
  std::array<int, 3> idx{0, 0, 0};
  idx[0] = raw % lattice_[0];
  raw /= lattice_[0];
  idx[1] = raw % lattice_[1];
  idx[2] = raw / lattice_[1];
  return idx;
}

Point ScalarSpace::raw_coordinate(int raw) const {
  const auto idx = raw_lattice_index(raw);
  Point x{0, 0, 0};
  for (int i = 0; i < dim_; ++i) x[i] = origin_[i] + idx[i] * node_spacing_[i];
  // Pin the far ends exactly so boundary tests are not perturbed by round-off.
  for (int i = 0; i < dim_; ++i)
    if (idx[i] == lattice_[i] - 1) x[i] = origin_[i] + 1.0;
  return x;
}

int ScalarSpace::cell_raw_node(const Cell& cell, int a) const {
  std::array<int, 3> idx{0, 0, 0};
  const int n = order_ + 1;
  for (int i = 0; i < dim_; ++i) {
    idx[i] = cell.index[i] * order_ + a % n;
    a /= n;
  }
  return raw_index(idx[0], idx[1], idx[2]);
}

void ScalarSpace::cell_dofs(const Cell& cell, std::vector<int>& out) const {
  out.resize(nloc_);
  for (int a = 0; a < nloc_; ++a) out[a] = free_of_raw_[cell_raw_node(cell, a)];
}

int ScalarSpace::count_dirichlet() const {
  int c = 0;
  for (char d : dirichlet_) c += d ? 1 : 0;
  return c;
}

int ScalarSpace::count_followers() const {
  int c = 0;
  for (int r = 0; r < num_raw(); ++r) c += is_follower(r) ? 1 : 0;
  return c;
}

int ScalarSpace::count_dirichlet_followers() const {
  int c = 0;
  for (int r = 0; r < num_raw(); ++r) c += (is_follower(r) && dirichlet_[r]) ? 1 : 0;
  return c;
}

SpaceSet::SpaceSet(std::shared_ptr<const StackedGrid> grid, const SpaceOptions& opts)
    : grid_(std::move(grid)),
      opts_(opts),
      u_{ScalarSpace(grid_->biot, 2, opts.dirichlet, false), grid_->dim()},
      p_(grid_->biot, order_of(opts.p_b), opts.dirichlet, false),
      v_{ScalarSpace(grid_->fluid, order_of(opts.fluid_velocity), false, opts.dirichlet), grid_->dim()},
      pi_(grid_->fluid, order_of(opts.fluid_pressure), false, false) {
  const bool taylor_hood =
      opts.fluid_velocity == ElementFamily::Q2 && opts.fluid_pressure == ElementFamily::Q1;
  if (!taylor_hood && !opts.allow_unstable)
    throw SpaceError("unsupported fluid pairing " + to_string(opts.fluid_velocity) + "/" +
                     to_string(opts.fluid_pressure) + ": only Q2 velocity with Q1 pressure is supported");
}

int SpaceSet::size(Field f) const {
  switch (f) {
    case Field::U:
    case Field::W: return u_.num_free();
    case Field::P: return p_.num_free();
    case Field::V: return v_.num_free();
    case Field::Pi: return pi_.num_free();
  }
  return 0;
}

const ScalarSpace& SpaceSet::scalar(Field f) const {
  switch (f) {
    case Field::U:
    case Field::W: return u_.scalar;
    case Field::P: return p_;
    case Field::V: return v_.scalar;
    case Field::Pi: return pi_;
  }
  return p_;
}

int SpaceSet::components(Field f) const {
  return (f == Field::U || f == Field::W || f == Field::V) ? dim() : 1;
}

const SubMesh& SpaceSet::mesh(Field f) const {
  return (f == Field::V || f == Field::Pi) ? grid_->fluid : grid_->biot;
}

std::shared_ptr<const SpaceSet> build_spaces(std::shared_ptr<const StackedGrid> grid,
                                             const SpaceOptions& opts) {
  if (!grid) throw SpaceError("null grid");
  return std::make_shared<const SpaceSet>(std::move(grid), opts);
}

std::shared_ptr<const SpaceSet> build_spaces(const GridSpec& spec, const SpaceOptions& opts) {
  return build_spaces(std::make_shared<const StackedGrid>(build_grid(spec)), opts);
}

FieldFunction scalar_field(std::function<double(const Point&)> f) {
  return [f = std::move(f)](const Point& x, double* out) { out[0] = f(x); };
}

Vector interpolate_field(const SpaceSet& spaces, Field which, const FieldFunction& f) {
  const ScalarSpace& s = spaces.scalar(which);
  const int nc = spaces.components(which);
  Vector out = Vector::Zero(spaces.size(which));
  std::array<double, 3> val{}, lead{};
  for (int r = 0; r < s.num_raw(); ++r) {
    const Point x = s.raw_coordinate(r);
    f(x, val.data());
    for (int c = 0; c < nc; ++c)
      if (!std::isfinite(val[c])) throw SpaceError("field " + to_string(which) + " is not finite");
    if (s.is_dirichlet(r)) {
      for (int c = 0; c < nc; ++c)
        if (std::abs(val[c]) > 1e-12)
          throw SpaceError("field " + to_string(which) + " is nonzero on its Dirichlet boundary");
      continue;
    }
    if (s.is_follower(r)) {
      f(s.raw_coordinate(s.leader(r)), lead.data());
      for (int c = 0; c < nc; ++c)
        if (std::abs(val[c] - lead[c]) > 1e-10)
          throw SpaceError("field " + to_string(which) + " is not laterally periodic");
      continue;
    }
    const int fi = s.free_of_raw(r);
    for (int c = 0; c < nc; ++c) out[c * s.num_free() + fi] = val[c];
  }
  return out;
}

FieldSample evaluate_field(const SpaceSet& spaces, Field which, const Vector& coeffs, int cell,
                           const Point& ref) {
  const ScalarSpace& s = spaces.scalar(which);
  const SubMesh& mesh = spaces.mesh(which);
  const Cell& c = mesh.cells.at(cell);
  const Point h = mesh.cell_size();
  const int nc = spaces.components(which);
  const ShapeValues sv = evaluate_shape(s.order(), s.dim(), ref);
  FieldSample out;
  for (int a = 0; a < s.nodes_per_cell(); ++a) {
    const int fi = s.free_of_raw(s.cell_raw_node(c, a));
    if (fi < 0) continue;
    for (int comp = 0; comp < nc; ++comp) {
      const double coef = coeffs[comp * s.num_free() + fi];
      out.value[comp] += coef * sv.value[a];
      for (int i = 0; i < s.dim(); ++i) out.grad[comp][i] += coef * sv.grad[a][i] / h[i];
    }
  }
  return out;
}

double norm(const SpaceSet& spaces, Field which, NormKind kind, const Vector& coeffs,
            const MaterialParams& params) {
  if (coeffs.size() != spaces.size(which))
    throw SpaceError("coefficient length " + std::to_string(coeffs.size()) + " does not match " +
                     to_string(which) + " space size " + std::to_string(spaces.size(which)));
  const ScalarSpace& s = spaces.scalar(which);
  const SubMesh& mesh = spaces.mesh(which);
  const int d = s.dim();
  const int nc = spaces.components(which);
  const Point h = mesh.cell_size();
  double jac = 1.0;
  for (int i = 0; i < d; ++i) jac *= h[i];
  const Tabulation tab = Tabulation::volume(s.order(), d);
  std::vector<int> dofs;
  double total = 0.0;
  for (const Cell& cell : mesh.cells) {
    s.cell_dofs(cell, dofs);
    for (int q = 0; q < tab.num_points(); ++q) {
      double val[3] = {0, 0, 0};
      double g[3][3] = {{0}};
      for (int a = 0; a < tab.num_nodes(); ++a) {
        if (dofs[a] < 0) continue;
        for (int c = 0; c < nc; ++c) {
          const double coef = coeffs[c * s.num_free() + dofs[a]];
          val[c] += coef * tab.value(q, a);
          for (int i = 0; i < d; ++i) g[c][i] += coef * tab.grad(q, a, i) / h[i];
        }
      }
      double integrand = 0.0;
      const bool vec = nc > 1;
      NormKind k = kind;
      if (k == NormKind::Energy && which == Field::Pi) k = NormKind::L2;
      if (k == NormKind::L2) {
        for (int c = 0; c < nc; ++c) integrand += val[c] * val[c];
      } else if (k == NormKind::H1semi || !vec) {
        for (int c = 0; c < nc; ++c)
          for (int i = 0; i < d; ++i) integrand += g[c][i] * g[c][i];
      } else {
        double div = 0.0, dd = 0.0;
        for (int i = 0; i < d; ++i) {
          div += g[i][i];
          for (int j = 0; j < d; ++j) {
            const double e = 0.5 * (g[i][j] + g[j][i]);
            dd += e * e;
          }
        }
        integrand = which == Field::V ? dd : 2.0 * params.mu * dd + params.lambda * div * div;
      }
      total += tab.weight(q) * jac * integrand;
    }
  }
  return std::sqrt(std::max(total, 0.0));
}

}  // namespace poroflux
