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

// Brute-force dense reference assembly. Shares no code with the library's
// element machinery: basis functions are evaluated globally from the node
// lattice and every integral loops over all dofs at every quadrature point.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "poroflux/params.hpp"

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using P3 = std::array<double, 3>;

struct Box {
  int dim;
  int n_lat;
  int n_vert;
  double z_lo;
  double z_hi;
};

/// Scalar Lagrange space on a box with lateral periodicity and optional
/// homogeneous Dirichlet rows at the top or bottom.
struct Space {
  Box box;
  int order;
  bool dir_top;
  bool dir_bottom;
  std::vector<std::array<int, 3>> nodes;  ///< lattice index of each free node

  Space(Box b, int k, bool top, bool bottom);
  int size() const { return static_cast<int>(nodes.size()); }
  /// Value and gradient of free basis function i at x, given the cell containing x.
  void eval(int i, const P3& x, const std::array<int, 3>& cell, double& val, P3& grad) const;
};

/// Quadrature points of every cell of a box, or of its facets at a level.
struct QPoint {
  P3 x;
  double w;
  std::array<int, 3> cell;
};
std::vector<QPoint> volume_points(const Box& b);
std::vector<QPoint> face_points(const Box& b, double level);

struct Basis {
  Mat val;                 ///< [q, dof]
  std::vector<Mat> grad;   ///< grad[i](q, dof)
};
Basis tabulate(const Space& s, const std::vector<QPoint>& pts);

/// Vector-valued dof layout: component-blocked, like the library.
Mat mass(const Space& s, int comps);
Mat gradient(const Space& s, int comps);
Mat elastic(const Space& s, double mu, double lambda);
Mat strain(const Space& s);
/// (q, div u) with q in `scalar`, u in `vec`.
Mat div_pairing(const Space& scalar, const Space& vec);

/// Interface integral of trace products, summed over the listed component pairs.
Mat face_pairing(const Space& row, int row_comps, const Space& col, int col_comps,
                 const std::vector<std::pair<int, int>>& comps);

/// The full stacked problem on the smallest grids.
struct Problem {
  Space u;
  Space p;
  Space v;
  Space pi;
  Problem(int dim, int n_lat, int n_b, int n_f, int p_order);
  int nu() const { return u.size() * u.box.dim; }
  int np() const { return p.size(); }
  int nv() const { return v.size() * v.box.dim; }
  int npi() const { return pi.size(); }
};

/// The unscaled mixed bilinear form at eps = 1 on [u, p, v, pi], written term by term.
Mat resolvent_eps1(const Problem& pr, const poroflux::MaterialParams& m);

}  // namespace oracle
