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

#include "poroflux/energy.hpp"
#include "poroflux/resolvent.hpp"
#include "poroflux/timestepper.hpp"

namespace poroflux {

/// Energy, instantaneous slip and zero cumulative terms for a single state.
EnergyReport energy_report(const FormSet& forms, const InterfaceSet& iface, const StateVector& y);

/// L2 projection of the fluid content c0 p_b + alpha div u onto the pressure space.
Vector fluid_content(const FormSet& forms, const StateVector& y);

struct StabilityReport {
  double infsup_constant = 0.0;
  double z_ellipticity_constant = 0.0;
  double max_symmetric_eigenvalue = 0.0;  ///< largest eigenvalue of the X-symmetrized generator on {B v = 0}
  double symmetric_scale = 0.0;           ///< largest magnitude among those eigenvalues
  double min_singular_value = 0.0;        ///< of the constrained generator in the X norm
  double max_singular_value = 0.0;
};

/// Dense checks of the semi-discrete generator restricted to {B v = 0}.
/// Fills the eigenvalue and singular value fields. Needs c0 > 0 (X Gram
/// positive definite) and at most `max_dofs` state dofs.
StabilityReport generator_checks(const FormSet& forms, const InterfaceSet& iface, int max_dofs = 2000);

/// Smallest generalized eigenvalue of the symmetric part of the resolvent's
/// (u, p_b, v) block on {B v = 0}, relative to blockdiag(A_E + M_u, G_p + M_p, G_D + M_v).
double z_ellipticity_constant(const ResolventSystem& sys, int max_dofs = 2000);

/// Smallest nonzero sigma with B G^-1 B^T q = sigma^2 M q, where G is the
/// |D(v)| Gram of the fluid velocity and M the pi mass.
double infsup_constant(const FormSet& forms);
/// The same computation for given matrices: B (m x n), G (n x n, SPD), M (m x m, SPD).
double infsup_from_matrices(const SparseMatrix& B, const SparseMatrix& G, const SparseMatrix& M);

/// Smooth interface cutoff: sin(pi x_1) in 2D, sin(pi x_1) sin(pi x_2) in 3D.
double default_cutoff(const Point& x, int dim);

struct ConstructiveInfsup {
  Vector omega;              ///< fluid velocity coefficients
  double ratio = 0.0;        ///< |omega|_{H1} / |eta|_{L2}
  double div_defect = 0.0;   ///< |div omega + eta|_{L2}
};

/// Builds omega with div omega = -eta weakly, omega = 0 on the bottom and
/// omega = c mu e_d on the interface with c = -(int eta) / (int_Gamma mu),
/// by minimizing |grad omega|^2 under the divergence constraint.
ConstructiveInfsup constructive_infsup_check(const FormSet& forms, const Vector& eta,
                                             const std::function<double(const Point&)>& mu = {});

/// Test function phi(t) [xi, q, zeta] with phi(t) = (1 - t/T)^2 on [0, T].
/// Spatial parts are interpolated; zeta is projected onto {B zeta = 0}.
struct WeakTest {
  FieldFunction xi;
  FieldFunction q;
  FieldFunction zeta;
  double T = 1.0;
};

/// Space-time weak form of a stored trajectory (every step kept), integrated
/// by the trapezoidal rule, minus its data terms. Returns the absolute value.
double weakform_residual(const FormSet& forms, const InterfaceSet& iface, const Trajectory& traj,
                         const WeakTest& test, const SourceFunction& sources = {});

}  // namespace poroflux
