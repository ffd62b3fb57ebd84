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

#include <Eigen/SparseLU>
#include <memory>
#include <optional>

#include "poroflux/forms.hpp"
#include "poroflux/state.hpp"

namespace poroflux {

/// Source terms on the interface that relax the four coupling conditions.
/// Empty functions mean zero. g_n and g_p are scalar; g_tau and g_sigma are
/// d-vectors (g_tau tangential).
struct InterfaceSources {
  FieldFunction g_n;
  FieldFunction g_tau;
  FieldFunction g_p;
  FieldFunction g_sigma;
  bool empty() const { return !g_n && !g_tau && !g_p && !g_sigma; }
};

/// Right-hand side of (eps I - A) y = F. Coefficient vectors may be left empty
/// (zero). The extra loads are weak forms tested against the w, p_b, v and pi
/// spaces and enter before the pressure-row scaling.
struct ResolventData {
  Vector f1;  ///< displacement datum, u space
  Vector f2;  ///< velocity datum, u space
  Vector f3;  ///< pressure datum, p_b space
  Vector f4;  ///< fluid velocity datum, v space
  Vector load_w;
  Vector load_p;
  Vector load_v;
  Vector load_pi;
  InterfaceSources sources;
};

/// Unscaled loads of the four equation rows before eliminating w.
struct WeakLoads {
  Vector w;
  Vector p;
  Vector v;
  Vector pi;
  static WeakLoads zeros(const SpaceSet& s);
};

struct SolveReport {
  double algebraic_residual = 0.0;
  double momentum = 0.0;       ///< interior residual of the solid momentum row
  double biot_mass = 0.0;      ///< interior residual of the Biot mass row
  double stokes = 0.0;         ///< interior residual of the Stokes row
  double interface_weak = 0.0; ///< residual of all rows at interface dofs
  double kinematic = 0.0;      ///< (v - w).e_d + k dp/dn - g_n
  double bjs = 0.0;            ///< beta (v - w).tau + tau.sigma_f e_d - g_tau
  double pressure_balance = 0.0;  ///< p_b + e_d.sigma_f e_d - g_p
  double stress_balance = 0.0;    ///< sigma_b e_d - sigma_f e_d - g_sigma
  std::optional<double> harmonic_mismatch;
};

/// Block system in the unknowns [u, p_b, v, pi] with w = eps u - f1 eliminated.
/// Rows are scaled by (1, 1/eps, 1/eps, 1/eps), which keeps the coupling
/// pairings skew for every eps and reproduces the unscaled form at eps = 1.
class ResolventSystem {
 public:
  ResolventSystem(std::shared_ptr<const FormSet> forms, std::shared_ptr<const InterfaceSet> iface,
                  double eps);

  double eps() const { return eps_; }
  const SparseMatrix& matrix() const { return matrix_; }
  /// Row scaling applied to the [u, p, v, pi] blocks.
  std::array<double, 4> row_scaling() const { return {1.0, 1.0 / eps_, 1.0 / eps_, 1.0 / eps_}; }
  std::array<int, 4> block_sizes() const { return sizes_; }
  const FormSet& forms() const { return *forms_; }
  const InterfaceSet& interface() const { return *iface_; }

  /// Weak loads implied by `data` (volume data, extra loads and interface sources).
  WeakLoads loads(const ResolventData& data) const;

  /// Solves for the state given unscaled row loads and the displacement datum f1.
  StateVector solve_loads(const WeakLoads& loads, const Vector& f1, double* residual = nullptr) const;

  std::pair<StateVector, SolveReport> solve(const ResolventData& data) const;

  /// Residuals of the interior equations and the interface conditions.
  SolveReport verify_strong(const StateVector& state, const ResolventData& data) const;

  /// Loads that make `state` the exact discrete solution (round-trip checks).
  WeakLoads loads_for(const StateVector& state) const;

  /// Unscaled operator rows applied to a state: returns (eps M + K) y + [0, 0, 0, B^T pi]
  /// in the w-form, together with B v.
  WeakLoads apply_w_form(const StateVector& state) const;

 private:
  Vector solve_raw(const Vector& rhs, double* residual) const;

  std::shared_ptr<const FormSet> forms_;
  std::shared_ptr<const InterfaceSet> iface_;
  double eps_;
  std::array<int, 4> sizes_{};
  SparseMatrix matrix_;
  SparseMatrix k_wp_;  ///< coupling_u + pn_u
  SparseMatrix k_pw_;  ///< coupling_p + pq_u
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>> lu_;
};

std::shared_ptr<const ResolventSystem> assemble_resolvent(std::shared_ptr<const FormSet> forms,
                                                          std::shared_ptr<const InterfaceSet> iface,
                                                          double eps);

/// Weak generator rows K y on the w, p_b and v test spaces (no mass, no pi):
/// the semi-discrete dynamics read M dy/dt = -K y - [0, 0, B^T pi] + loads.
WeakLoads apply_generator(const FormSet& forms, const InterfaceSet& iface, const StateVector& y);

/// Solves a Laplace problem for the fluid pressure with data built from the
/// Biot pressure and the fluid velocity, and compares it with state.pi.
/// Returns the L2 mismatch divided by max(|pi|, 1).
double harmonic_pressure_check(const StateVector& state, const FormSet& forms,
                               const FieldFunction& fluid_forcing = {}, const FieldFunction& g_p = {});

/// Interface dof masks: true where the basis function has support on the interface.
std::vector<char> interface_dof_mask(const SpaceSet& s, Field f);

}  // namespace poroflux
