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

#include "poroflux/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "poroflux/errors.hpp"

namespace poroflux {

namespace {

/// Jet of X(x_0) * Y(x_{d-1}) given 1D values and derivatives.
Jet separable(int dim, double X, double dX, double ddX, double Y, double dY, double ddY) {
  Jet j;
  const int n = dim - 1;
  j.val = X * Y;
  j.grad[0] = dX * Y;
  j.grad[n] = X * dY;
  j.hess[0][0] = ddX * Y;
  j.hess[n][n] = X * ddY;
  j.hess[0][n] = j.hess[n][0] = dX * dY;
  return j;
}

/// Jet of a function of the vertical coordinate only.
Jet vertical(int dim, double Y, double dY, double ddY) {
  Jet j;
  const int n = dim - 1;
  j.val = Y;
  j.grad[n] = dY;
  j.hess[n][n] = ddY;
  return j;
}

double laplacian(const Jet& j) { return j.hess[0][0] + j.hess[1][1] + j.hess[2][2]; }

}  // namespace

ManufacturedSolution trigonometric_solution() {
  constexpr double kk = 2.0 * std::numbers::pi;
  ManufacturedSolution s;
  s.name = "trigonometric";
  s.dim = 2;
  s.u = [](const Point& x, int comp) {
    const double sn = std::sin(kk * x[0]), cs = std::cos(kk * x[0]), y = x[1];
    if (comp == 0) return separable(2, sn, kk * cs, -kk * kk * sn, 1 - y * y * y, -3 * y * y, -6 * y);
    return separable(2, cs, -kk * sn, -kk * kk * cs, 1 - y * y * y * y, -4 * y * y * y, -12 * y * y);
  };
  s.p = [](const Point& x) {
    const double sn = std::sin(kk * x[0]), cs = std::cos(kk * x[0]), y = x[1];
    return separable(2, sn, kk * cs, -kk * kk * sn, 1 - y * y * y, -3 * y * y, -6 * y);
  };
  s.v = [](const Point& x, int comp) {
    const double sn = std::sin(kk * x[0]), cs = std::cos(kk * x[0]), z = 1 + x[1];
    const double h = z * z * z, dh = 3 * z * z, ddh = 6 * z, dddh = 6;
    if (comp == 0) return separable(2, sn, kk * cs, -kk * kk * sn, dh, ddh, dddh);
    return separable(2, cs, -kk * sn, -kk * kk * cs, -kk * h, -kk * dh, -kk * ddh);
  };
  s.pi = [](const Point& x) {
    const double sn = std::sin(kk * x[0]), cs = std::cos(kk * x[0]), z = 1 + x[1];
    const double ch = std::cosh(kk), P = std::cosh(kk * z) / ch, dP = kk * std::sinh(kk * z) / ch;
    return separable(2, sn, kk * cs, -kk * kk * sn, P, dP, kk * kk * P);
  };
  return s;
}

ManufacturedSolution polynomial_solution(int dim) {
  if (dim != 2 && dim != 3) throw ParameterError("manufactured solution dimension must be 2 or 3");
  ManufacturedSolution s;
  s.name = "polynomial";
  s.dim = dim;
  const int n = dim - 1;
  s.u = [dim, n](const Point& x, int comp) {
    const double y = x[n];
    if (comp == n) return vertical(dim, (1 - y) * (0.5 + y), 0.5 - 2 * y, -2.0);
    if (comp == 0) return vertical(dim, 1 - y * y, -2 * y, -2.0);
    return vertical(dim, 0.5 * (1 - y), -0.5, 0.0);
  };
  s.p = [dim, n](const Point& x) { return vertical(dim, 1 - x[n], -1.0, 0.0); };
  s.v = [dim, n](const Point& x, int comp) {
    const double y = x[n];
    if (comp == n) return vertical(dim, 0.0, 0.0, 0.0);
    if (comp == 0) return vertical(dim, (1 + y) * (2 - y), 1 - 2 * y, -2.0);
    return vertical(dim, 0.3 * (1 + y), 0.3, 0.0);
  };
  s.pi = [dim, n](const Point& x) { return vertical(dim, 0.5 + 0.3 * x[n], 0.3, 0.0); };
  return s;
}

ManufacturedSolution zero_solution(int dim) {
  ManufacturedSolution s;
  s.name = "zero";
  s.dim = dim;
  s.u = [](const Point&, int) { return Jet{}; };
  s.p = [](const Point&) { return Jet{}; };
  s.v = [](const Point&, int) { return Jet{}; };
  s.pi = [](const Point&) { return Jet{}; };
  return s;
}

ManufacturedData manufactured_data(const ManufacturedSolution& sol, const MaterialParams& m, double eps) {
  const int d = sol.dim;
  const int n = d - 1;
  ManufacturedData out;
  out.forcing_u = [sol, m, eps, d](const Point& x, double* f) {
    Jet u[3];
    for (int c = 0; c < d; ++c) u[c] = sol.u(x, c);
    const Jet p = sol.p(x);
    for (int i = 0; i < d; ++i) {
      double grad_div = 0.0;
      for (int j = 0; j < d; ++j) grad_div += u[j].hess[i][j];
      f[i] = eps * eps * m.rho_b * u[i].val - m.mu * laplacian(u[i]) - (m.lambda + m.mu) * grad_div +
             m.alpha * p.grad[i];
    }
  };
  out.forcing_p = [sol, m, eps, d](const Point& x, double* f) {
    const Jet p = sol.p(x);
    double div = 0.0;
    for (int c = 0; c < d; ++c) div += sol.u(x, c).grad[c];
    f[0] = eps * m.c0 * p.val + eps * m.alpha * div - m.k * laplacian(p);
  };
  out.forcing_v = [sol, m, eps, d](const Point& x, double* f) {
    Jet v[3];
    for (int c = 0; c < d; ++c) v[c] = sol.v(x, c);
    const Jet pi = sol.pi(x);
    for (int i = 0; i < d; ++i) {
      double grad_div = 0.0;
      for (int j = 0; j < d; ++j) grad_div += v[j].hess[i][j];
      f[i] = eps * m.rho_f * v[i].val - m.nu * (laplacian(v[i]) + grad_div) + pi.grad[i];
    }
  };
  out.sources.g_n = [sol, m, eps, n](const Point& x, double* g) {
    g[0] = m.k * sol.p(x).grad[n] + sol.v(x, n).val - eps * sol.u(x, n).val;
  };
  out.sources.g_tau = [sol, m, eps, n](const Point& x, double* g) {
    const Jet vn = sol.v(x, n);
    for (int t = 0; t < 3; ++t) g[t] = 0.0;
    for (int t = 0; t < n; ++t) {
      const Jet vt = sol.v(x, t);
      g[t] = m.beta * (vt.val - eps * sol.u(x, t).val) + m.nu * (vt.grad[n] + vn.grad[t]);
    }
  };
  out.sources.g_p = [sol, m, n](const Point& x, double* g) {
    g[0] = sol.p(x).val + 2.0 * m.nu * sol.v(x, n).grad[n] - sol.pi(x).val;
  };
  out.sources.g_sigma = [sol, m, d, n](const Point& x, double* g) {
    Jet u[3], v[3];
    double divu = 0.0;
    for (int c = 0; c < d; ++c) {
      u[c] = sol.u(x, c);
      v[c] = sol.v(x, c);
      divu += u[c].grad[c];
    }
    const double p = sol.p(x).val, pi = sol.pi(x).val;
    for (int i = 0; i < 3; ++i) g[i] = 0.0;
    for (int i = 0; i < d; ++i) {
      double sb = m.mu * (u[i].grad[n] + u[n].grad[i]);
      double sf = m.nu * (v[i].grad[n] + v[n].grad[i]);
      if (i == n) {
        sb += m.lambda * divu - m.alpha * p;
        sf -= pi;
      }
      g[i] = sb - sf;
    }
  };
  return out;
}

ResolventData manufactured_resolvent_data(const ResolventSystem& sys, const ManufacturedSolution& sol,
                                          Execution exec) {
  const FormSet& f = sys.forms();
  const SpaceSet& s = *f.spaces;
  if (sol.dim != s.dim()) throw ParameterError("manufactured solution dimension does not match the grid");
  const ManufacturedData md = manufactured_data(sol, f.params, sys.eps());
  ResolventData data;
  data.load_w = assemble_volume_load(s, Field::W, md.forcing_u, exec);
  data.load_p = assemble_volume_load(s, Field::P, md.forcing_p, exec);
  data.load_v = assemble_volume_load(s, Field::V, md.forcing_v, exec);
  data.sources = md.sources;
  return data;
}

FieldFunction exact_field(const ManufacturedSolution& sol, Field which, double eps) {
  const int d = sol.dim;
  switch (which) {
    case Field::U:
    case Field::W: {
      const double scale = which == Field::W ? eps : 1.0;
      return [sol, d, scale](const Point& x, double* out) {
        for (int c = 0; c < d; ++c) out[c] = scale * sol.u(x, c).val;
      };
    }
    case Field::P: return [sol](const Point& x, double* out) { out[0] = sol.p(x).val; };
    case Field::V:
      return [sol, d](const Point& x, double* out) {
        for (int c = 0; c < d; ++c) out[c] = sol.v(x, c).val;
      };
    case Field::Pi: return [sol](const Point& x, double* out) { out[0] = sol.pi(x).val; };
  }
  return {};
}

double field_error(const SpaceSet& spaces, Field which, const Vector& coeffs, const ManufacturedSolution& sol,
                   NormKind kind, double eps, Execution exec) {
  if (coeffs.size() != spaces.size(which)) throw SpaceError("coefficient length mismatch in field_error");
  const ScalarSpace& s = spaces.scalar(which);
  const SubMesh& mesh = spaces.mesh(which);
  const int d = s.dim();
  const int nc = spaces.components(which);
  const Tabulation tab = Tabulation::volume(s.order(), d);
  const double scale = which == Field::W ? eps : 1.0;
  const double total = reduce_sum(
      static_cast<int>(mesh.cells.size()),
      [&](int c) {
        const Cell& cell = mesh.cells[c];
        const CellBasis cb(tab, cell, d);
        std::vector<int> dofs;
        s.cell_dofs(cell, dofs);
        double acc = 0.0;
        for (int q = 0; q < cb.num_points(); ++q) {
          const Point x = cb.point(q);
          for (int comp = 0; comp < nc; ++comp) {
            Jet ex;
            if (which == Field::U || which == Field::W) ex = sol.u(x, comp);
            else if (which == Field::V) ex = sol.v(x, comp);
            else if (which == Field::P) ex = sol.p(x);
            else ex = sol.pi(x);
            double val = -scale * ex.val, g[3] = {-scale * ex.grad[0], -scale * ex.grad[1], -scale * ex.grad[2]};
            for (int a = 0; a < cb.num_nodes(); ++a) {
              if (dofs[a] < 0) continue;
              const double coef = coeffs[comp * s.num_free() + dofs[a]];
              val += coef * cb.value(q, a);
              for (int i = 0; i < d; ++i) g[i] += coef * cb.grad(q, a, i);
            }
            double e = 0.0;
            if (kind == NormKind::L2) e = val * val;
            else
              for (int i = 0; i < d; ++i) e += g[i] * g[i];
            acc += cb.jxw(q) * e;
          }
        }
        return acc;
      },
      exec);
  return std::sqrt(std::max(total, 0.0));
}

}  // namespace poroflux
