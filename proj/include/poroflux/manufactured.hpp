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

#include <functional>
#include <string>

#include "poroflux/params.hpp"
#include "poroflux/resolvent.hpp"

namespace poroflux {

/// Value, gradient and Hessian of a scalar function at a point.
struct Jet {
  double val = 0.0;
  std::array<double, 3> grad{0, 0, 0};
  std::array<std::array<double, 3>, 3> hess{};
};

/// Closed-form fields for the resolvent problem with f1 = 0, so w = eps u.
/// Requirements: laterally periodic, u and p vanish on the top boundary,
/// v vanishes on the bottom boundary and is divergence free.
struct ManufacturedSolution {
  std::string name;
  int dim = 2;
  std::function<Jet(const Point&, int comp)> u;
  std::function<Jet(const Point&)> p;
  std::function<Jet(const Point&, int comp)> v;
  std::function<Jet(const Point&)> pi;
};

/// Trigonometric solution in 2D with a harmonic fluid pressure.
ManufacturedSolution trigonometric_solution();
/// Laterally constant polynomial solution contained in the discrete spaces
/// (Q2 displacement and velocity, Q1 pressures).
ManufacturedSolution polynomial_solution(int dim = 2);
/// Identically zero fields.
ManufacturedSolution zero_solution(int dim = 2);

/// Interior forcings and interface sources implied by a manufactured solution.
struct ManufacturedData {
  FieldFunction forcing_u;  ///< eps^2 rho_b u - div sigma^E(u) + alpha grad p
  FieldFunction forcing_p;  ///< eps c0 p + eps alpha div u - k lap p
  FieldFunction forcing_v;  ///< eps rho_f v - div(2 nu D v) + grad pi
  InterfaceSources sources;
};
ManufacturedData manufactured_data(const ManufacturedSolution& sol, const MaterialParams& m, double eps);

/// Resolvent data (weak loads plus interface sources) for the system's space set and eps.
ResolventData manufactured_resolvent_data(const ResolventSystem& sys, const ManufacturedSolution& sol,
                                          Execution exec = Execution::Serial);

/// Exact field as a FieldFunction (values only). `which` selects u, w (= eps u), p, v or pi.
FieldFunction exact_field(const ManufacturedSolution& sol, Field which, double eps = 1.0);

/// L2 or H1-seminorm error between a discrete field and an exact one, by cell quadrature.
double field_error(const SpaceSet& spaces, Field which, const Vector& coeffs, const ManufacturedSolution& sol,
                   NormKind kind, double eps = 1.0, Execution exec = Execution::Serial);

}  // namespace poroflux
