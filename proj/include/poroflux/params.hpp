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

namespace poroflux {

/// Nondimensional material coefficients.
struct MaterialParams {
  double rho_b = 1.0;  ///< Biot bulk density
  double rho_f = 1.0;  ///< fluid density
  double lambda = 1.0;
  double mu = 1.0;
  double alpha = 1.0;  ///< Biot-Willis coefficient
  double c0 = 1.0;     ///< storage coefficient
  double k = 1.0;      ///< permeability
  double nu = 1.0;     ///< shear viscosity
  double beta = 1.0;   ///< slip coefficient

  /// Throws ParameterError naming the offending coefficient.
  void validate() const;
};

}  // namespace poroflux
