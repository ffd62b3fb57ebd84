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

#include "poroflux/forms.hpp"
#include "poroflux/state.hpp"

namespace poroflux {

/// Total energy 1/2 [a_E(u, u) + rho_b |w|^2 + c0 |p_b|^2 + rho_f |v|^2].
double total_energy(const FormSet& forms, const StateVector& y);

/// X inner product of two states on [u, w, p_b, v].
double x_inner(const FormSet& forms, const StateVector& a, const StateVector& b);

/// Instantaneous dissipation rate and its parts.
struct Dissipation {
  double diffusion = 0.0;  ///< k |grad p_b|^2
  double viscous = 0.0;    ///< 2 nu |D v|^2
  double slip = 0.0;       ///< beta |(v - w).tau|^2 on the interface
  double total() const { return diffusion + viscous + slip; }
};
Dissipation dissipation(const FormSet& forms, const InterfaceSet& iface, const StateVector& y);

/// One row of an energy history.
struct EnergyReport {
  double time = 0.0;
  double e = 0.0;                  ///< total energy
  double d_cum = 0.0;              ///< cumulative dissipation
  double identity_residual = 0.0;  ///< signed defect of the discrete energy balance of the last step
  double slip_norm = 0.0;          ///< |(v - w).tau| on the interface at this time
  double slip_cum = 0.0;           ///< cumulative slip part of d_cum
  double work_cum = 0.0;           ///< cumulative work of the sources
};

}  // namespace poroflux
