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

#include <memory>

#include "poroflux/assembly.hpp"
#include "poroflux/params.hpp"
#include "poroflux/spaces.hpp"

namespace poroflux {

/// Volume bilinear forms on free dofs.
struct FormSet {
  std::shared_ptr<const SpaceSet> spaces;
  MaterialParams params;

  SparseMatrix elastic;         ///< a_E(u, xi)
  SparseMatrix mass_u;          ///< unit mass on u/w
  SparseMatrix mass_p;          ///< unit mass on p_b
  SparseMatrix mass_v;          ///< unit mass on v
  SparseMatrix mass_pi;         ///< unit mass on pi
  SparseMatrix mass_b;          ///< rho_b * mass_u
  SparseMatrix mass_c0;         ///< c0 * mass_p
  SparseMatrix mass_f;          ///< rho_f * mass_v
  SparseMatrix gradient_p;      ///< (grad p, grad q)
  SparseMatrix diffusion;       ///< k (grad p, grad q)
  SparseMatrix coupling_u;      ///< -alpha (p, div xi): rows u, cols p
  SparseMatrix coupling_p;      ///< alpha (div w, q): rows p, cols w
  SparseMatrix strain_gram_v;   ///< (D v, D zeta)
  SparseMatrix gradient_v;      ///< (grad v, grad zeta)
  SparseMatrix viscous;         ///< 2 nu (D v, D zeta)
  SparseMatrix divergence;      ///< b(zeta, pi) = -(pi, div zeta): rows pi, cols v
  SparseMatrix x_gram;          ///< blockdiag(A_E, rho_b M_u, c0 M_p, rho_f M_v) on [u, w, p, v]

  int size(Field f) const { return spaces->size(f); }
  /// Offsets of u, w, p, v inside the state vector used by x_gram.
  int offset(Field f) const;
  int state_size() const;
};

/// Interface couplings on the matched interface facets.
struct InterfaceSet {
  SparseMatrix pn_u;  ///< -(p, xi.e_d): rows u, cols p
  SparseMatrix pn_v;  ///< +(p, zeta.e_d): rows v, cols p
  SparseMatrix pq_u;  ///< +(w.e_d, q): rows p, cols w
  SparseMatrix pq_v;  ///< -(v.e_d, q): rows p, cols v
  SparseMatrix s_ww;  ///< beta (w.tau, xi.tau)
  SparseMatrix s_wv;  ///< -beta (v.tau, xi.tau)
  SparseMatrix s_vw;  ///< -beta (w.tau, zeta.tau)
  SparseMatrix s_vv;  ///< beta (v.tau, zeta.tau)
  SparseMatrix trace_mass_u;  ///< (w.e_d, xi.e_d) on the interface, unit weight
  SparseMatrix trace_mass_p;  ///< (p, q) on the interface
};

FormSet assemble_forms(std::shared_ptr<const SpaceSet> spaces, const MaterialParams& params,
                       Execution exec = Execution::Serial);

InterfaceSet assemble_interface(const SpaceSet& spaces, const MaterialParams& params,
                                Execution exec = Execution::Serial);

/// The X inner-product Gram on [u, w, p, v].
SparseMatrix assemble_x_gram(const FormSet& forms);

/// Elementary assemblers, exposed for reuse and benchmarking.
namespace kernels {
SparseMatrix mass(const SpaceSet& s, Field f, double scale, Execution exec);
SparseMatrix gradient_gram(const SpaceSet& s, Field f, double scale, Execution exec);
SparseMatrix elasticity(const SpaceSet& s, Field f, double mu, double lambda, Execution exec);
/// scale * (D trial, D test).
SparseMatrix strain_gram(const SpaceSet& s, Field f, double scale, Execution exec);
/// scale * (test, div trial): rows scalar field, cols vector field.
SparseMatrix divergence_rows_scalar(const SpaceSet& s, Field scalar, Field vec, double scale, Execution exec);
/// scale * (trial, div test): rows vector field, cols scalar field.
SparseMatrix divergence_rows_vector(const SpaceSet& s, Field vec, Field scalar, double scale, Execution exec);
/// scale * sum over listed component pairs of the interface integral of
/// trace(test, row_comp) * trace(trial, col_comp).
SparseMatrix interface_pairing(const SpaceSet& s, Field row, Field col,
                               const std::vector<std::pair<int, int>>& comps, double scale,
                               Execution exec);
}  // namespace kernels

/// Block helpers.
SparseMatrix stack_blocks(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                          const std::vector<int>& row_sizes, const std::vector<int>& col_sizes,
                          const std::vector<std::vector<double>>& scales = {});

}  // namespace poroflux
