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
#include <string>
#include <vector>

#include "poroflux/analysis.hpp"
#include "poroflux/config.hpp"
#include "poroflux/io.hpp"
#include "poroflux/manufactured.hpp"

namespace poroflux {

/// Spaces, forms and interface couplings for one grid and parameter set.
struct Discretization {
  std::shared_ptr<const SpaceSet> spaces;
  std::shared_ptr<const FormSet> forms;
  std::shared_ptr<const InterfaceSet> iface;
};
Discretization discretize(const GridSpec& grid, const SpaceOptions& opts, const MaterialParams& m,
                          Execution exec = Execution::Serial);

/// Initial state of the given kind. Random data uses a generator seeded with
/// `seed`; p_b is random only when c0 > 0 and `compatible` is false, so the
/// data is admissible for every c0.
StateVector make_initial_state(const FormSet& forms, InitialKind kind, std::uint64_t seed, bool compatible = false);

/// Resolvent solves of the manufactured solution at eps = 1 on each refinement
/// (default 8, 16, 32): L2 errors and observed orders. `energy` holds the
/// energy-norm errors of the same solves.
struct MmsStudy {
  CsvTable l2;
  CsvTable energy;
};
MmsStudy run_mms_study(const RunConfig& cfg);
/// The same study for a given solution (the default is trigonometric in 2D, polynomial in 3D).
MmsStudy run_mms_study(const RunConfig& cfg, const ManufacturedSolution& sol);

/// Transient runs for c0 = 2^-k (k = 0..c0_levels) and c0 = 0 from fixed
/// compatible data. Columns: c0, diff_next (sup over time of the c0-free
/// energy seminorm of the difference to the c0 / 2 trajectory; nan for the
/// last two rows), diff_zero (the same against c0 = 0), sup_sqrt_c0_p.
CsvTable run_c0_study(const RunConfig& cfg);

/// Source-free transient run. Columns: t, e, d_cum, identity_residual, slip_cum.
struct TransientRun {
  CsvTable table;
  Trajectory trajectory;
};
TransientRun run_decay_study(const RunConfig& cfg);

/// Source-free transient run with norms of each field per step.
TransientRun run_transient_experiment(const RunConfig& cfg);

/// Manufactured resolvent solves on each refinement (default 4, 8, 16) at the
/// configured eps, with interface-condition residuals.
struct ResolventStudy {
  CsvTable table;
  std::vector<StateVector> solutions;
  std::vector<std::shared_ptr<const SpaceSet>> spaces;
};
ResolventStudy run_resolvent_study(const RunConfig& cfg);

/// Discrete inf-sup constants per refinement of the fluid box (default 4, 8,
/// 16): Taylor-Hood, the Q1/Q1 control and the constructive ratio, plus the
/// generator and Z-ellipticity checks on the configured grid in `stability`.
struct InfsupStudy {
  CsvTable table;
  CsvTable stability;
};
InfsupStudy run_infsup_study(const RunConfig& cfg);

/// Runs the configured experiment and writes run.csv (plus optional
/// fields_####.vtk and energy.svg) into cfg.output_dir. Returns the files written.
std::vector<std::string> run_experiment(const RunConfig& cfg);

}  // namespace poroflux
