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

#include <cstdint>
#include <string>
#include <vector>

#include "poroflux/grid.hpp"
#include "poroflux/params.hpp"
#include "poroflux/spaces.hpp"
#include "poroflux/timestepper.hpp"

namespace poroflux {

enum class Experiment { Resolvent, Transient, Mms, C0Study, Infsup, Decay };
std::string to_string(Experiment e);
/// Throws ConfigError for unknown names.
Experiment parse_experiment(const std::string& s);

enum class InitialKind { Zero, Random, Smooth };
std::string to_string(InitialKind k);
InitialKind parse_initial(const std::string& s);

/// Everything an experiment run depends on.
struct RunConfig {
  GridSpec grid;
  ElementFamily p_b = ElementFamily::Q1;
  MaterialParams materials;
  TransientConfig time;
  Experiment experiment = Experiment::Transient;
  std::uint64_t seed = 1;
  InitialKind initial = InitialKind::Random;
  std::vector<int> refinements;  ///< empty: the experiment's default sequence
  double eps = 1.0;              ///< resolvent parameter
  int c0_levels = 8;             ///< c0 = 2^-k for k = 0..c0_levels, then 0
  int samples = 20;              ///< random pressures in the inf-sup study
  int max_dofs = 2000;           ///< limit for dense stability checks
  bool write_fields = false;
  bool write_svg = true;
  std::string output_dir = ".";

  /// Throws ParameterError or GridError when a sub-config is inadmissible.
  void validate() const;
  SpaceOptions space_options() const;
};

/// Parses INI text with sections [grid], [materials], [time], [experiment];
/// '#' and ';' start comments. [grid] and [materials] are required, unknown
/// sections or keys are errors. Overrides have the form section.key=value and
/// are applied after the file. Throws ConfigError; the result is validated.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace poroflux
