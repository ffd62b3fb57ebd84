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

#include "poroflux/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "poroflux/errors.hpp"

namespace poroflux {

CsvTable::CsvTable(std::string version, std::vector<std::string> header)
    : version_(std::move(version)), header_(std::move(header)) {
  if (header_.empty()) throw Error("CSV header must not be empty");
  if (std::set<std::string>(header_.begin(), header_.end()).size() != header_.size())
    throw Error("CSV header names must be unique");
}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != header_.size())
    throw Error("CSV row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(header_.size()));
  rows_.push_back(std::move(row));
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) throw Error("no CSV column named '" + name + "'");
  const size_t j = static_cast<size_t>(it - header_.begin());
  std::vector<double> out;
  for (const auto& r : rows_) out.push_back(r[j]);
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string s = "# " + version_ + "\n";
  for (size_t j = 0; j < header_.size(); ++j) s += (j ? "," : "") + header_[j];
  s += "\n";
  for (const auto& r : rows_) {
    for (size_t j = 0; j < r.size(); ++j) s += (j ? "," : "") + format_number(r[j]);
    s += "\n";
  }
  return s;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

/// Cell index and reference coordinate of x along one direction of a mesh.
std::pair<int, double> locate(double x, double lo, double h, int n) {
  const double t = (x - lo) / h;
  const int i = std::clamp(static_cast<int>(std::floor(t + 1e-12)), 0, n - 1);
  return {i, std::clamp(t - i, 0.0, 1.0)};
}

}  // namespace

void CsvTable::write(const std::string& path) const { write_file(path, to_string()); }

void write_vtk(const std::string& path, const SpaceSet& s, const StateVector& y) {
  y.validate(s);
  const GridSpec& g = s.grid().spec;
  const int d = g.dimension;
  const int nl = 2 * g.n_lat + 1;
  const int m = std::max(g.n_b, g.n_f);
  const int nz = 4 * m + 1;
  const double hx = 1.0 / (2 * g.n_lat), hz = 1.0 / (2 * m);
  const std::array<int, 3> dims = d == 2 ? std::array<int, 3>{nl, nz, 1} : std::array<int, 3>{nl, nl, nz};
  const std::array<double, 3> spacing = d == 2 ? std::array<double, 3>{hx, hz, 1.0} : std::array<double, 3>{hx, hx, hz};
  const long npts = static_cast<long>(dims[0]) * dims[1] * dims[2];

  struct Sampled {
    std::string name;
    Field field;
    bool vector;
    std::vector<std::array<double, 3>> values;
  };
  std::vector<Sampled> fields{{"displacement", Field::U, true, {}},
                              {"solid_velocity", Field::W, true, {}},
                              {"biot_pressure", Field::P, false, {}},
                              {"fluid_velocity", Field::V, true, {}},
                              {"fluid_pressure", Field::Pi, false, {}}};
  auto coeffs = [&](Field f) -> const Vector& {
    switch (f) {
      case Field::U: return y.u;
      case Field::W: return y.w;
      case Field::P: return y.p;
      case Field::V: return y.v;
      default: return y.pi;
    }
  };
  for (Sampled& fs : fields) {
    fs.values.assign(npts, {0.0, 0.0, 0.0});
    const SubMesh& mesh = s.mesh(fs.field);
    const Point h = mesh.cell_size();
    long idx = 0;
    for (int k = 0; k < dims[2]; ++k)
      for (int j = 0; j < dims[1]; ++j)
        for (int i = 0; i < dims[0]; ++i, ++idx) {
          const std::array<int, 3> ijk{i, j, k};
          Point x{0, 0, 0};
          for (int a = 0; a < d; ++a) x[a] = (a == d - 1 ? -1.0 : 0.0) + ijk[a] * spacing[a];
          const double z = x[d - 1];
          if (z < mesh.z_lo - 1e-12 || z > mesh.z_hi + 1e-12) continue;
          std::array<int, 3> cell{0, 0, 0};
          Point ref{0, 0, 0};
          for (int a = 0; a < d; ++a) {
            const double lo = a == d - 1 ? mesh.z_lo : 0.0;
            std::tie(cell[a], ref[a]) = locate(x[a], lo, h[a], mesh.cells_per_dir[a]);
          }
          const FieldSample fsmp =
              evaluate_field(s, fs.field, coeffs(fs.field), mesh.cell_index(cell[0], cell[1], cell[2]), ref);
          fs.values[idx] = fsmp.value;
        }
  }

  std::ostringstream out;
  out << "# vtk DataFile Version 2.0\nporoflux fields t=" << format_number(y.time) << "\nASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << dims[0] << " " << dims[1] << " " << dims[2] << "\n"
      << "ORIGIN 0 " << (d == 2 ? "-1 0" : "0 -1") << "\n"
      << "SPACING " << format_number(spacing[0]) << " " << format_number(spacing[1]) << " "
      << format_number(spacing[2]) << "\n"
      << "POINT_DATA " << npts << "\n";
  for (const Sampled& fs : fields) {
    if (fs.vector) {
      out << "VECTORS " << fs.name << " double\n";
      for (const auto& v : fs.values)
        out << format_number(v[0]) << " " << format_number(v[1]) << " " << format_number(v[2]) << "\n";
    } else {
      out << "SCALARS " << fs.name << " double 1\nLOOKUP_TABLE default\n";
      for (const auto& v : fs.values) out << format_number(v[0]) << "\n";
    }
  }
  write_file(path, out.str());
}

void write_energy_svg(const std::string& path, const std::vector<EnergyReport>& energy) {
  const double width = 640, height = 400, left = 70, right = 20, top = 30, bottom = 50;
  double t0 = 0, t1 = 1, ymax = 0;
  if (!energy.empty()) {
    t0 = energy.front().time;
    t1 = std::max(energy.back().time, t0 + 1e-300);
    for (const auto& r : energy) ymax = std::max({ymax, r.e, r.d_cum});
  }
  if (!(ymax > 0)) ymax = 1;
  auto px = [&](double t) { return left + (t - t0) / (t1 - t0) * (width - left - right); };
  auto py = [&](double v) { return height - bottom - v / ymax * (height - top - bottom); };
  char buf[128];
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n"
      << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<path d=\"M%g %g V%g H%g\" stroke=\"black\" fill=\"none\"/>\n", left, top,
                height - bottom, width - right);
  out << buf;
  auto polyline = [&](auto value, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : energy) {
      std::snprintf(buf, sizeof buf, "%.3f,%.3f ", px(r.time), py(value(r)));
      out << buf;
    }
    out << "\"/>\n";
  };
  polyline([](const EnergyReport& r) { return r.e; }, "steelblue");
  polyline([](const EnergyReport& r) { return r.d_cum; }, "firebrick");
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\">%.6g</text>\n", 5.0, top + 4, ymax);
  out << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\">0</text>\n", left - 15, height - bottom);
  out << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\">t = %.6g</text>\n", left,
                height - bottom + 20, t0);
  out << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"end\">t = %.6g</text>\n",
                width - right, height - bottom + 20, t1);
  out << buf;
  out << "<text x=\"" << width - right - 150 << "\" y=\"" << top
      << "\" font-size=\"12\" fill=\"steelblue\">energy e</text>\n"
      << "<text x=\"" << width - right - 150 << "\" y=\"" << top + 16
      << "\" font-size=\"12\" fill=\"firebrick\">dissipated d_cum</text>\n"
      << "</svg>\n";
  write_file(path, out.str());
}

}  // namespace poroflux
