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

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "poroflux/grid.hpp"
#include "poroflux/params.hpp"

namespace poroflux {

using Vector = Eigen::VectorXd;

enum class ElementFamily { Q1 = 1, Q2 = 2 };

inline int order_of(ElementFamily f) { return static_cast<int>(f); }
std::string to_string(ElementFamily f);
ElementFamily parse_family(const std::string& s);

/// Continuous scalar Lagrange space on one box with periodic and Dirichlet
/// constraints eliminated. Raw nodes form a lattice of order*n+1 points per
/// direction; a follower node on the far lateral side maps to its leader at 0.
class ScalarSpace {
 public:
  ScalarSpace(const SubMesh& mesh, int order, bool dirichlet_top, bool dirichlet_bottom);

  int order() const { return order_; }
  int dim() const { return dim_; }
  Side side() const { return side_; }
  int num_raw() const { return static_cast<int>(leader_.size()); }
  int num_free() const { return static_cast<int>(raw_of_free_.size()); }
  int nodes_per_cell() const { return nloc_; }

  const std::array<int, 3>& lattice() const { return lattice_; }
  int raw_index(int i0, int i1, int i2) const { return i0 + lattice_[0] * (i1 + lattice_[1] * i2); }
  std::array<int, 3> raw_lattice_index(int raw) const;
  Point raw_coordinate(int raw) const;

  int leader(int raw) const { return leader_[raw]; }
  bool is_follower(int raw) const { return leader_[raw] != raw; }
  bool is_dirichlet(int raw) const { return dirichlet_[raw]; }
  /// Free index of a raw node (resolving periodicity), or -1 when constrained to zero.
  int free_of_raw(int raw) const { return free_of_raw_[raw]; }
  int raw_of_free(int f) const { return raw_of_free_[f]; }

  /// Raw node of local node `a` in `cell`, lexicographic local numbering.
  int cell_raw_node(const Cell& cell, int a) const;
  /// Free indices of the local nodes of `cell` (-1 for constrained nodes).
  void cell_dofs(const Cell& cell, std::vector<int>& out) const;

  int count_dirichlet() const;
  int count_followers() const;
  int count_dirichlet_followers() const;

 private:
  Side side_;
  int order_;
  int dim_;
  int nloc_;
  Point origin_;
  Point node_spacing_;
  std::array<int, 3> lattice_{1, 1, 1};
  std::vector<int> leader_;
  std::vector<char> dirichlet_;
  std::vector<int> free_of_raw_;
  std::vector<int> raw_of_free_;
};

/// Vector-valued space built from a scalar space; dofs are component-blocked:
/// dof = comp * scalar.num_free() + free.
struct VectorSpace {
  ScalarSpace scalar;
  int components;
  int num_free() const { return components * scalar.num_free(); }
  int dof(int comp, int free) const { return comp * scalar.num_free() + free; }
};

enum class Field { U, W, P, V, Pi };
std::string to_string(Field f);

struct SpaceOptions {
  ElementFamily p_b = ElementFamily::Q1;
  ElementFamily fluid_velocity = ElementFamily::Q2;
  ElementFamily fluid_pressure = ElementFamily::Q1;
  /// Permits pairings without a discrete inf-sup bound (negative controls only).
  bool allow_unstable = false;
  /// Drops all Dirichlet constraints (periodicity is kept).
  bool dirichlet = true;
};

/// Degree-of-freedom maps for u, w, p_b, v and pi.
class SpaceSet {
 public:
  SpaceSet(std::shared_ptr<const StackedGrid> grid, const SpaceOptions& opts);

  const StackedGrid& grid() const { return *grid_; }
  std::shared_ptr<const StackedGrid> grid_ptr() const { return grid_; }
  const SpaceOptions& options() const { return opts_; }
  int dim() const { return grid_->dim(); }

  /// u and w share this object.
  const VectorSpace& displacement() const { return u_; }
  const ScalarSpace& biot_pressure() const { return p_; }
  const VectorSpace& fluid_velocity() const { return v_; }
  const ScalarSpace& fluid_pressure() const { return pi_; }

  int size(Field f) const;
  /// Scalar space underlying a field and its component count.
  const ScalarSpace& scalar(Field f) const;
  int components(Field f) const;
  const SubMesh& mesh(Field f) const;

 private:
  std::shared_ptr<const StackedGrid> grid_;
  SpaceOptions opts_;
  VectorSpace u_;
  ScalarSpace p_;
  VectorSpace v_;
  ScalarSpace pi_;
};

std::shared_ptr<const SpaceSet> build_spaces(std::shared_ptr<const StackedGrid> grid,
                                             const SpaceOptions& opts = {});
std::shared_ptr<const SpaceSet> build_spaces(const GridSpec& spec, const SpaceOptions& opts = {});

/// Pointwise field definition; writes `components` values into `out`.
using FieldFunction = std::function<void(const Point& x, double* out)>;
FieldFunction scalar_field(std::function<double(const Point&)> f);

/// Nodal interpolant on free dofs. Throws SpaceError when f is not laterally
/// periodic or does not vanish on the Dirichlet set.
Vector interpolate_field(const SpaceSet& spaces, Field which, const FieldFunction& f);

/// Evaluates a discrete field (value and gradient per component) at a point of a cell.
struct FieldSample {
  std::array<double, 3> value{0, 0, 0};
  std::array<std::array<double, 3>, 3> grad{};  ///< grad[comp][dir]
};
FieldSample evaluate_field(const SpaceSet& spaces, Field which, const Vector& coeffs, int cell,
                           const Point& ref);

/// L2: mass norm. H1semi: gradient seminorm. Energy: sqrt(a_E) for u and w,
/// the gradient seminorm for p_b, the symmetric-gradient norm for v, L2 for pi.
/// Evaluated by direct cell quadrature.
enum class NormKind { L2, H1semi, Energy };
double norm(const SpaceSet& spaces, Field which, NormKind kind, const Vector& coeffs,
            const MaterialParams& params = {});

}  // namespace poroflux
