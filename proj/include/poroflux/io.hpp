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

#include <string>
#include <vector>

#include "poroflux/energy.hpp"
#include "poroflux/state.hpp"

namespace poroflux {

/// Rectangular numeric table with unique column names.
class CsvTable {
 public:
  /// `version` names the column set; it is written as the first comment line.
  CsvTable(std::string version, std::vector<std::string> header);

  void add_row(std::vector<double> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::string& version() const { return version_; }
  /// Column by name; throws Error for unknown names.
  std::vector<double> column(const std::string& name) const;

  /// "# <version>", the header, then rows with 17 significant digits, LF endings.
  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::string version_;
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// Formats a number with 17 significant digits ("nan", "inf", "-inf" for non-finite values).
std::string format_number(double x);

/// Legacy ASCII VTK (STRUCTURED_POINTS) of all fields sampled on a uniform
/// lattice of the stacked box at twice the cell resolution. Each field is
/// zero outside its own box.
void write_vtk(const std::string& path, const SpaceSet& spaces, const StateVector& y);

/// Line plot of e and d_cum against time.
void write_energy_svg(const std::string& path, const std::vector<EnergyReport>& energy);

}  // namespace poroflux
