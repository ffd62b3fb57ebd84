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

#include <array>
#include <vector>

#include "poroflux/basis.hpp"

namespace poroflux {

/// Cell counts of the stacked box. Lateral counts are shared by both boxes.
struct GridSpec {
  int dimension = 2;
  int n_lat = 8;
  int n_b = 8;
  int n_f = 8;

  /// Throws GridError when the spec is inadmissible.
  void validate() const;
};

enum class Side { Biot, Fluid };

/// An axis-aligned box cell. `index` is its position in the cell lattice.
struct Cell {
  std::array<int, 3> index{0, 0, 0};
  Point lo{0, 0, 0};
  Point hi{0, 0, 0};
  std::vector<int> vertices;
};

/// A facet normal to the vertical direction, owned by one cell.
struct Facet {
  int cell = -1;
  double level = 0.0;  ///< vertical coordinate of the facet
  Point centroid{0, 0, 0};
  std::vector<int> vertices;
};

/// Structured mesh of one box. The vertical direction is the last one.
struct SubMesh {
  Side side = Side::Biot;
  int dim = 2;
  std::array<int, 3> cells_per_dir{1, 1, 1};
  double z_lo = 0.0;
  double z_hi = 1.0;
  std::vector<Point> vertices;
  std::vector<Cell> cells;
  /// lateral_pair[j][v] is the vertex opposed to v across lateral direction j,
  /// or -1 when v is not on that lateral boundary.
  std::array<std::vector<int>, 2> lateral_pair;

  std::array<int, 3> vertex_lattice() const;
  int vertex_index(int i0, int i1, int i2) const;
  int cell_index(int i0, int i1, int i2) const;
  Point cell_size() const;
  /// Facets of cells touching the horizontal plane at `level`.
  std::vector<Facet> facets_at(double level) const;
};

/// The pair of stacked boxes: Biot box above x_d = 0, fluid box below.
struct StackedGrid {
  GridSpec spec;
  SubMesh biot;
  SubMesh fluid;
  std::vector<Facet> gamma_b;    ///< top of the Biot box
  std::vector<Facet> gamma_f;    ///< bottom of the fluid box
  std::vector<Facet> gamma_i_b;  ///< interface as seen from the Biot box
  std::vector<Facet> gamma_i_f;  ///< interface as seen from the fluid box

  int dim() const { return spec.dimension; }
  int num_cells() const { return static_cast<int>(biot.cells.size() + fluid.cells.size()); }
  const SubMesh& mesh(Side s) const { return s == Side::Biot ? biot : fluid; }
};

StackedGrid build_grid(const GridSpec& spec);

/// One matched interface facet, seen from both boxes.
struct InterfacePair {
  int cell_b = -1;
  int cell_f = -1;
  Point centroid{0, 0, 0};
};

/// Bijection between the two views of the interface.
/// The fluid-side normal is +e_d and the Biot-side normal is -e_d.
struct InterfaceMap {
  std::vector<InterfacePair> pairs;
  std::vector<int> b_to_f;  ///< Biot-view facet index -> fluid-view facet index
  std::vector<int> f_to_b;  ///< inverse of b_to_f
  int normal_axis = 1;
  double normal_sign_f = 1.0;
  double normal_sign_b = -1.0;
};

/// Matches interface facets geometrically, recomputing both views from the cells.
/// Throws GridError when any interface facet is unmatched.
InterfaceMap interface_map(const StackedGrid& grid);

}  // namespace poroflux
