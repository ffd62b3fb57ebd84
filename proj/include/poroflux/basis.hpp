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

namespace poroflux {

using Point = std::array<double, 3>;

/// One-dimensional Lagrange polynomials on [0,1] with equispaced nodes.
struct Lagrange1d {
  static double value(int order, int node, double t);
  static double derivative(int order, int node, double t);
  static double second_derivative(int order, int node, double t);
};

/// Gauss-Legendre rule with three points on [0,1]; exact through degree 5.
struct Gauss3 {
  static constexpr int size = 3;
  static const std::array<double, 3>& points();
  static const std::array<double, 3>& weights();
};

/// Shape functions of a continuous tensor-product Lagrange element (Q1/Q2)
/// tabulated at a set of reference points of the unit cell [0,1]^dim.
///
/// Local nodes are numbered lexicographically, first direction fastest:
/// a = a0 + (order+1) * (a1 + (order+1) * a2).
class Tabulation {
 public:
  Tabulation(int order, int dim, std::vector<Point> ref_points, std::vector<double> ref_weights);

  /// Volume tabulation at the tensor Gauss points.
  static Tabulation volume(int order, int dim);
  /// Tabulation on the face x_{dim-1} = level (0 or 1) at tensor Gauss points of that face.
  static Tabulation face(int order, int dim, double level);

  int order() const { return order_; }
  int dim() const { return dim_; }
  int num_nodes() const { return nloc_; }
  int num_points() const { return static_cast<int>(points_.size()); }

  const Point& point(int q) const { return points_[q]; }
  double weight(int q) const { return weights_[q]; }
  double value(int q, int a) const { return values_[q * nloc_ + a]; }
  /// Reference-cell gradient component.
  double grad(int q, int a, int i) const { return grads_[(q * nloc_ + a) * 3 + i]; }
  /// Reference-cell Hessian entry.
  double hess(int q, int a, int i, int j) const { return hess_[(q * nloc_ + a) * 9 + i * 3 + j]; }

  /// Lattice offset of local node `a` along direction `i`.
  int node_offset(int a, int i) const;

 private:
  int order_;
  int dim_;
  int nloc_;
  std::vector<Point> points_;
  std::vector<double> weights_;
  std::vector<double> values_;
  std::vector<double> grads_;
  std::vector<double> hess_;
};

/// Evaluate all shape functions of an element at a single reference point.
struct ShapeValues {
  std::vector<double> value;
  std::vector<std::array<double, 3>> grad;
};
ShapeValues evaluate_shape(int order, int dim, const Point& ref);

}  // namespace poroflux
