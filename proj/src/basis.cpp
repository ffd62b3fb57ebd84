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

#include "poroflux/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace poroflux {

double Lagrange1d::value(int order, int node, double t) {
  if (order == 1) return node == 0 ? 1.0 - t : t;
  switch (node) {
    case 0: return (2.0 * t - 1.0) * (t - 1.0);
    case 1: return 4.0 * t * (1.0 - t);
    default: return t * (2.0 * t - 1.0);
  }
}

double Lagrange1d::derivative(int order, int node, double t) {
  if (order == 1) return node == 0 ? -1.0 : 1.0;
  switch (node) {
    case 0: return 4.0 * t - 3.0;
    case 1: return 4.0 - 8.0 * t;
    default: return 4.0 * t - 1.0;
  }
}

double Lagrange1d::second_derivative(int order, int node, double /*t*/) {
  if (order == 1) return 0.0;
  return node == 1 ? -8.0 : 4.0;
}

const std::array<double, 3>& Gauss3::points() {
  static const double s = 0.5 * std::sqrt(0.6);
  static const std::array<double, 3> p{0.5 - s, 0.5, 0.5 + s};
  return p;
}

const std::array<double, 3>& Gauss3::weights() {
  static const std::array<double, 3> w{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  return w;
}

namespace {

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

Tabulation::Tabulation(int order, int dim, std::vector<Point> ref_points,
                       std::vector<double> ref_weights)
    : order_(order),
      dim_(dim),
      nloc_(ipow(order + 1, dim)),
      points_(std::move(ref_points)),
      weights_(std::move(ref_weights)) {
  if (order < 1 || order > 2) throw std::invalid_argument("element order must be 1 or 2");
  const int nq = num_points();
  values_.assign(static_cast<size_t>(nq) * nloc_, 0.0);
  grads_.assign(static_cast<size_t>(nq) * nloc_ * 3, 0.0);
  hess_.assign(static_cast<size_t>(nq) * nloc_ * 9, 0.0);
  for (int q = 0; q < nq; ++q) {
    const Point& x = points_[q];
    for (int a = 0; a < nloc_; ++a) {
      std::array<double, 3> v{1, 1, 1}, d{0, 0, 0}, dd{0, 0, 0};
      for (int i = 0; i < dim_; ++i) {
        const int n = node_offset(a, i);
        v[i] = Lagrange1d::value(order, n, x[i]);
        d[i] = Lagrange1d::derivative(order, n, x[i]);
        dd[i] = Lagrange1d::second_derivative(order, n, x[i]);
      }
      const size_t base = static_cast<size_t>(q) * nloc_ + a;
      values_[base] = v[0] * v[1] * v[2];
      for (int i = 0; i < dim_; ++i) {
        double g = 1.0;
        for (int k = 0; k < dim_; ++k) g *= (k == i) ? d[k] : v[k];
        grads_[base * 3 + i] = g;
        for (int j = 0; j < dim_; ++j) {
          double h = 1.0;
          for (int k = 0; k < dim_; ++k) {
            if (k == i && k == j) h *= dd[k];
            else if (k == i || k == j) h *= d[k];
            else h *= v[k];
          }
          hess_[base * 9 + i * 3 + j] = h;
        }
      }
    }
  }
}

int Tabulation::node_offset(int a, int i) const {
  const int n = order_ + 1;
  for (int k = 0; k < i; ++k) a /= n;
  return a % n;
}

Tabulation Tabulation::volume(int order, int dim) {
  const auto& gp = Gauss3::points();
  const auto& gw = Gauss3::weights();
  std::vector<Point> pts;
  std::vector<double> wts;
  const int n2 = dim == 3 ? 3 : 1;
  for (int k = 0; k < n2; ++k)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) {
        if (dim == 2) {
          pts.push_back({gp[i], gp[j], 0.0});
          wts.push_back(gw[i] * gw[j]);
        } else {
          pts.push_back({gp[i], gp[j], gp[k]});
          wts.push_back(gw[i] * gw[j] * gw[k]);
        }
      }
  return Tabulation(order, dim, std::move(pts), std::move(wts));
}

Tabulation Tabulation::face(int order, int dim, double level) {
  const auto& gp = Gauss3::points();
  const auto& gw = Gauss3::weights();
  std::vector<Point> pts;
  std::vector<double> wts;
  if (dim == 2) {
    for (int i = 0; i < 3; ++i) {
      pts.push_back({gp[i], level, 0.0});
      wts.push_back(gw[i]);
    }
  } else {
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) {
        pts.push_back({gp[i], gp[j], level});
        wts.push_back(gw[i] * gw[j]);
      }
  }
  return Tabulation(order, dim, std::move(pts), std::move(wts));
}

ShapeValues evaluate_shape(int order, int dim, const Point& ref) {
  Tabulation t(order, dim, {ref}, {1.0});
  ShapeValues s;
  s.value.resize(t.num_nodes());
  s.grad.resize(t.num_nodes());
  for (int a = 0; a < t.num_nodes(); ++a) {
    s.value[a] = t.value(0, a);
    s.grad[a] = {t.grad(0, a, 0), t.grad(0, a, 1), t.grad(0, a, 2)};
  }
  return s;
}

}  // namespace poroflux
