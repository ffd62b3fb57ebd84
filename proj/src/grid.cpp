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

#include "poroflux/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "poroflux/errors.hpp"

namespace poroflux {

void GridSpec::validate() const {
  if (dimension != 2 && dimension != 3)
    throw GridError("grid dimension must be 2 or 3, got " + std::to_string(dimension));
  if (n_lat < 2) throw GridError("n_lat must be >= 2, got " + std::to_string(n_lat));
  if (n_b < 2) throw GridError("n_b must be >= 2, got " + std::to_string(n_b));
  if (n_f < 2) throw GridError("n_f must be >= 2, got " + std::to_string(n_f));
}

std::array<int, 3> SubMesh::vertex_lattice() const {
  std::array<int, 3> n{1, 1, 1};
  for (int i = 0; i < dim; ++i) n[i] = cells_per_dir[i] + 1;
  return n;
}

int SubMesh::vertex_index(int i0, int i1, int i2) const {
  const auto n = vertex_lattice();
  return i0 + n[0] * (i1 + n[1] * i2);
}

int SubMesh::cell_index(int i0, int i1, int i2) const {
  return i0 + cells_per_dir[0] * (i1 + cells_per_dir[1] * i2);
}

Point SubMesh::cell_size() const {
  Point h{1, 1, 1};
  for (int i = 0; i + 1 < dim; ++i) h[i] = 1.0 / cells_per_dir[i];
  h[dim - 1] = (z_hi - z_lo) / cells_per_dir[dim - 1];
  return h;
}

std::vector<Facet> SubMesh::facets_at(double level) const {
  const int v = dim - 1;
  std::vector<Facet> out;
  for (size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    for (double face : {cell.lo[v], cell.hi[v]}) {
      if (std::abs(face - level) > 1e-12) continue;
      Facet f;
      f.cell = static_cast<int>(c);
      f.level = level;
      for (int i = 0; i < dim; ++i) f.centroid[i] = 0.5 * (cell.lo[i] + cell.hi[i]);
      f.centroid[v] = level;
      for (int vid : cell.vertices)
        if (std::abs(vertices[vid][v] - level) <= 1e-12) f.vertices.push_back(vid);
      out.push_back(std::move(f));
    }
  }
  return out;
}

namespace {

SubMesh build_submesh(const GridSpec& spec, Side side) {
  SubMesh m;
  m.side = side;
  m.dim = spec.dimension;
  const int d = spec.dimension;
  for (int i = 0; i + 1 < d; ++i) m.cells_per_dir[i] = spec.n_lat;
  m.cells_per_dir[d - 1] = side == Side::Biot ? spec.n_b : spec.n_f;
  m.z_lo = side == Side::Biot ? 0.0 : -1.0;
  m.z_hi = side == Side::Biot ? 1.0 : 0.0;

  const auto nv = m.vertex_lattice();
  const Point h = m.cell_size();
  m.vertices.resize(static_cast<size_t>(nv[0]) * nv[1] * nv[2]);
  for (int k = 0; k < nv[2]; ++k)
    for (int j = 0; j < nv[1]; ++j)
      for (int i = 0; i < nv[0]; ++i) {
        const std::array<int, 3> idx{i, j, k};
        Point x{0, 0, 0};
        for (int a = 0; a < d; ++a) x[a] = idx[a] * h[a];
        x[d - 1] = m.z_lo + idx[d - 1] * h[d - 1];
        if (idx[d - 1] == m.cells_per_dir[d - 1]) x[d - 1] = m.z_hi;
        m.vertices[m.vertex_index(i, j, k)] = x;
      }

  const auto& nc = m.cells_per_dir;
  const int kmax = d == 3 ? nc[2] : 1;
  for (int k = 0; k < kmax; ++k)
    for (int j = 0; j < nc[1]; ++j)
      for (int i = 0; i < nc[0]; ++i) {
        Cell c;
        c.index = {i, j, k};
        const int corners = d == 3 ? 8 : 4;
        for (int a = 0; a < corners; ++a) {
          const int di = a & 1, dj = (a >> 1) & 1, dk = (a >> 2) & 1;
          c.vertices.push_back(m.vertex_index(i + di, j + dj, k + dk));
        }
        c.lo = m.vertices[c.vertices.front()];
        c.hi = m.vertices[c.vertices.back()];
        m.cells.push_back(std::move(c));
      }

  for (int lat = 0; lat < d - 1; ++lat) {
    auto& pair = m.lateral_pair[lat];
    pair.assign(m.vertices.size(), -1);
    for (int k = 0; k < nv[2]; ++k)
      for (int j = 0; j < nv[1]; ++j)
        for (int i = 0; i < nv[0]; ++i) {
          std::array<int, 3> idx{i, j, k};
          const int last = nv[lat] - 1;
          if (idx[lat] != 0 && idx[lat] != last) continue;
          std::array<int, 3> opp = idx;
          opp[lat] = idx[lat] == 0 ? last : 0;
          pair[m.vertex_index(i, j, k)] = m.vertex_index(opp[0], opp[1], opp[2]);
        }
  }
  return m;
}

}  // namespace

StackedGrid build_grid(const GridSpec& spec) {
  spec.validate();
  StackedGrid g;
  g.spec = spec;
  g.biot = build_submesh(spec, Side::Biot);
  g.fluid = build_submesh(spec, Side::Fluid);
  g.gamma_b = g.biot.facets_at(1.0);
  g.gamma_f = g.fluid.facets_at(-1.0);
  g.gamma_i_b = g.biot.facets_at(0.0);
  g.gamma_i_f = g.fluid.facets_at(0.0);
  return g;
}

namespace {

std::vector<int> lateral_order(const std::vector<Facet>& facets, int dim) {
  std::vector<int> order(facets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int i = dim - 2; i >= 0; --i) {
      const double da = facets[a].centroid[i], db = facets[b].centroid[i];
      if (std::abs(da - db) > 1e-12) return da < db;
    }
    return a < b;
  });
  return order;
}

bool same_vertex_set(const SubMesh& mb, const Facet& fb, const SubMesh& mf, const Facet& ff) {
  if (fb.vertices.size() != ff.vertices.size()) return false;
  for (int vb : fb.vertices) {
    bool found = false;
    for (int vf : ff.vertices) {
      double dist = 0.0;
      for (int i = 0; i < 3; ++i) dist = std::max(dist, std::abs(mb.vertices[vb][i] - mf.vertices[vf][i]));
      if (dist <= 1e-14) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

InterfaceMap interface_map(const StackedGrid& grid) {
  const int d = grid.dim();
  const auto fb = grid.biot.facets_at(0.0);
  const auto ff = grid.fluid.facets_at(0.0);
  if (fb.empty()) throw GridError("interface has no Biot-side facets");
  if (fb.size() != ff.size())
    throw GridError("interface facet counts differ: " + std::to_string(fb.size()) + " Biot-side vs " +
                    std::to_string(ff.size()) + " fluid-side");
  const auto ob = lateral_order(fb, d);
  const auto of = lateral_order(ff, d);

  InterfaceMap map;
  map.normal_axis = d - 1;
  map.b_to_f.assign(fb.size(), -1);
  map.f_to_b.assign(ff.size(), -1);
  for (size_t i = 0; i < ob.size(); ++i) {
    const Facet& a = fb[ob[i]];
    const Facet& b = ff[of[i]];
    double dist = 0.0;
    for (int k = 0; k < 3; ++k) dist = std::max(dist, std::abs(a.centroid[k] - b.centroid[k]));
    if (dist > 1e-14 || !same_vertex_set(grid.biot, a, grid.fluid, b))
      throw GridError("interface facet of Biot cell " + std::to_string(a.cell) + " has no geometric partner");
    map.b_to_f[ob[i]] = of[i];
    map.f_to_b[of[i]] = ob[i];
  }
  map.pairs.reserve(fb.size());
  for (size_t i = 0; i < fb.size(); ++i)
    map.pairs.push_back({fb[i].cell, ff[map.b_to_f[i]].cell, fb[i].centroid});
  return map;
}

}  // namespace poroflux
