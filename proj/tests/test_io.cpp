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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "poroflux/errors.hpp"
#include "poroflux/experiments.hpp"
#include "poroflux/io.hpp"

using namespace poroflux;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("poroflux_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST(Csv, LayoutAndExactRoundTrip) {
  CsvTable t("poroflux-csv v1 demo", {"a", "b"});
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<std::vector<double>> values;
  for (int i = 0; i < 20; ++i) {
    values.push_back({u(gen), u(gen) * 1e-12});
    t.add_row(values.back());
  }
  const std::vector<std::string> lines = lines_of(t.to_string());
  ASSERT_EQ(lines.size(), 22u);
  EXPECT_EQ(lines[0], "# poroflux-csv v1 demo");
  EXPECT_EQ(lines[1], "a,b");
  for (int i = 0; i < 20; ++i) {
    const auto comma = lines[i + 2].find(',');
    EXPECT_EQ(std::strtod(lines[i + 2].substr(0, comma).c_str(), nullptr), values[i][0]);
    EXPECT_EQ(std::strtod(lines[i + 2].substr(comma + 1).c_str(), nullptr), values[i][1]);
  }
  EXPECT_EQ(t.to_string().find('\r'), std::string::npos);
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Csv, RejectsRaggedRowsAndDuplicateNames) {
  CsvTable t("v", {"a", "b"});
  EXPECT_THROW(t.add_row({1.0}), Error);
  EXPECT_THROW(CsvTable("v", {"a", "a"}), Error);
  EXPECT_THROW(CsvTable("v", {}), Error);
  t.add_row({1.0, 2.0});
  EXPECT_EQ(t.column("b"), std::vector<double>{2.0});
  EXPECT_THROW(t.column("c"), Error);
}

TEST(Csv, WritesFile) {
  const fs::path dir = scratch("csv");
  CsvTable t("v", {"x"});
  t.add_row({2.5});
  t.write((dir / "t.csv").string());
  EXPECT_EQ(slurp(dir / "t.csv"), "# v\nx\n2.5\n");
  EXPECT_THROW(t.write((dir / "missing" / "t.csv").string()), Error);
}

TEST(Vtk, SamplesReproduceDiscreteFields) {
  const Discretization d = discretize(GridSpec{2, 2, 2, 3}, {}, MaterialParams{});
  const SpaceSet& s = *d.spaces;
  StateVector y = StateVector::zeros(s);
  // Fields inside the discrete spaces, so lattice samples are exact.
  y.u = interpolate_field(s, Field::U, [](const Point& x, double* o) {
    o[0] = 1 - x[1];
    o[1] = 2 * (1 - x[1]) * x[1];
  });
  y.v = interpolate_field(s, Field::V, [](const Point& x, double* o) {
    o[0] = 1 + x[1];
    o[1] = 0.0;
  });
  y.pi = interpolate_field(s, Field::Pi, [](const Point& x, double* o) { o[0] = 3 + x[1]; });
  const fs::path dir = scratch("vtk");
  write_vtk((dir / "f.vtk").string(), s, y);
  const std::vector<std::string> lines = lines_of(slurp(dir / "f.vtk"));
  ASSERT_GT(lines.size(), 10u);
  EXPECT_EQ(lines[0], "# vtk DataFile Version 2.0");
  EXPECT_EQ(lines[2], "ASCII");
  EXPECT_EQ(lines[3], "DATASET STRUCTURED_POINTS");
  EXPECT_EQ(lines[4], "DIMENSIONS 5 13 1");
  EXPECT_EQ(lines[5], "ORIGIN 0 -1 0");
  const int npts = 5 * 13;
  EXPECT_EQ(lines[7], "POINT_DATA " + std::to_string(npts));
  // displacement block follows; point (i, j) has x = i / 4, z = -1 + j / 6.
  ASSERT_EQ(lines[8], "VECTORS displacement double");
  for (int j = 0; j < 13; ++j)
    for (int i = 0; i < 5; ++i) {
      const double z = -1.0 + j / 6.0;
      std::istringstream is(lines[9 + j * 5 + i]);
      double a, b, c;
      is >> a >> b >> c;
      if (z < -1e-12) {
        EXPECT_EQ(a, 0.0);
      } else {
        EXPECT_NEAR(a, 1 - z, 1e-12);
        EXPECT_NEAR(b, 2 * (1 - z) * z, 1e-12);
      }
      EXPECT_EQ(c, 0.0);
    }
  const auto pos = std::find(lines.begin(), lines.end(), "SCALARS fluid_pressure double 1");
  ASSERT_NE(pos, lines.end());
  for (int j = 0; j < 13; ++j) {
    const double z = -1.0 + j / 6.0;
    const double v = std::stod(*(pos + 2 + j * 5 + 3));
    EXPECT_NEAR(v, z <= 1e-12 ? 3 + z : 0.0, 1e-12);
  }
  EXPECT_EQ(lines.size(), 8u + 3 * (1 + npts) + 2 * (2 + npts));
}

TEST(Vtk, ThreeDimensionalLayout) {
  const Discretization d = discretize(GridSpec{3, 2, 2, 2}, {}, MaterialParams{});
  const fs::path dir = scratch("vtk3");
  write_vtk((dir / "f.vtk").string(), *d.spaces, StateVector::zeros(*d.spaces));
  const std::vector<std::string> lines = lines_of(slurp(dir / "f.vtk"));
  EXPECT_EQ(lines[4], "DIMENSIONS 5 5 9");
  EXPECT_EQ(lines[5], "ORIGIN 0 0 -1");
}

TEST(Svg, ContainsBothCurves) {
  std::vector<EnergyReport> rows(4);
  for (int i = 0; i < 4; ++i) {
    rows[i].time = 0.1 * i;
    rows[i].e = 4.0 - i;
    rows[i].d_cum = 0.5 * i;
  }
  const fs::path dir = scratch("svg");
  write_energy_svg((dir / "e.svg").string(), rows);
  const std::string s = slurp(dir / "e.svg");
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  size_t count = 0;
  for (size_t p = s.find("<polyline"); p != std::string::npos; p = s.find("<polyline", p + 1)) ++count;
  EXPECT_EQ(count, 2u);
  write_energy_svg((dir / "empty.svg").string(), {});
  EXPECT_TRUE(fs::exists(dir / "empty.svg"));
}
