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

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "poroflux/errors.hpp"
#include "poroflux/experiments.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace poroflux;
  CLI::App app{"Biot-Stokes filtration simulator"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  for (Experiment e : {Experiment::Resolvent, Experiment::Transient, Experiment::Mms, Experiment::C0Study,
                       Experiment::Infsup, Experiment::Decay}) {
    CLI::App* sub = app.add_subcommand(to_string(e), "run the " + to_string(e) + " experiment");
    sub->add_option("--config", config_path, "INI configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides [experiment] output_dir)");
    sub->add_option("--override", overrides, "section.key=value, applied after the file (repeatable)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg = load_config(config_path, overrides);
    cfg.experiment = parse_experiment(name);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    for (const std::string& path : run_experiment(cfg)) std::cout << path << "\n";
    return 0;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverError;
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
}
