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

#include "poroflux/timestepper.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>

#include "poroflux/errors.hpp"

namespace poroflux {

std::string to_string(TimeScheme s) { return s == TimeScheme::BackwardEuler ? "backward_euler" : "crank_nicolson"; }

TimeScheme parse_scheme(const std::string& s) {
  if (s == "be" || s == "backward_euler" || s == "1") return TimeScheme::BackwardEuler;
  if (s == "cn" || s == "crank_nicolson" || s == "0.5") return TimeScheme::CrankNicolson;
  throw ConfigError("unknown time scheme '" + s + "' (expected backward_euler or crank_nicolson)");
}

void TransientConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time step dt must be > 0, got " + std::to_string(dt));
  if (!(T >= dt) || !std::isfinite(T)) throw ParameterError("final time T must satisfy T >= dt, got " + std::to_string(T));
  if (output_stride < 1) throw ParameterError("output stride must be >= 1");
}

int TransientConfig::num_steps() const { return static_cast<int>(std::ceil(T / dt - 1e-9)); }

namespace {

Vector coeffs_or_interpolant(const SpaceSet& s, Field f, const Vector& coeffs, const FieldFunction& fn) {
  if (coeffs.size() > 0) {
    if (coeffs.size() != s.size(f)) throw SpaceError("initial " + to_string(f) + " coefficients have the wrong length");
    return coeffs;
  }
  if (fn) return interpolate_field(s, f, fn);
  return Vector::Zero(s.size(f));
}

/// Copies free-dof coefficients of `from` into the free-dof layout of `to`
/// (same mesh and order, `to` with fewer constraints).
Vector lift(const ScalarSpace& from, const ScalarSpace& to, int comps, const Vector& c) {
  Vector out = Vector::Zero(comps * to.num_free());
  for (int comp = 0; comp < comps; ++comp)
    for (int i = 0; i < from.num_free(); ++i)
      out[comp * to.num_free() + to.free_of_raw(from.raw_of_free(i))] = c[comp * from.num_free() + i];
  return out;
}

/// L2 norm over the Biot box of d0 - alpha div u_h.
double compatibility_defect(const SpaceSet& s, const Vector& u, const FieldFunction& d0, double alpha) {
  const ScalarSpace& us = s.scalar(Field::U);
  const int d = s.dim();
  const Tabulation tab = Tabulation::volume(us.order(), d);
  std::vector<int> dofs;
  double acc = 0.0;
  for (const Cell& cell : s.grid().biot.cells) {
    const CellBasis cb(tab, cell, d);
    us.cell_dofs(cell, dofs);
    for (int q = 0; q < cb.num_points(); ++q) {
      double div = 0.0;
      for (int c = 0; c < d; ++c)
        for (int a = 0; a < cb.num_nodes(); ++a)
          if (dofs[a] >= 0) div += u[c * us.num_free() + dofs[a]] * cb.grad(q, a, c);
      double dv = 0.0;
      d0(cb.point(q), &dv);
      const double r = dv - alpha * div;
      acc += cb.jxw(q) * r * r;
    }
  }
  return std::sqrt(acc);
}

void add_scaled(WeakLoads& a, const WeakLoads& b, double s) {
  a.w += s * b.w;
  a.p += s * b.p;
  a.v += s * b.v;
  a.pi += s * b.pi;
}

WeakLoads checked(const SpaceSet& s, WeakLoads l) {
  auto fix = [](Vector& v, int n, const char* name) {
    if (v.size() == 0) v = Vector::Zero(n);
    else if (v.size() != n) throw SpaceError(std::string("source load ") + name + " has the wrong length");
  };
  fix(l.w, s.size(Field::W), "w");
  fix(l.p, s.size(Field::P), "p");
  fix(l.v, s.size(Field::V), "v");
  fix(l.pi, s.size(Field::Pi), "pi");
  return l;
}

double work(const WeakLoads& f, const StateVector& y) { return f.w.dot(y.w) + f.p.dot(y.p) + f.v.dot(y.v); }

StateVector midpoint(const StateVector& a, const StateVector& b) {
  StateVector m;
  m.u = 0.5 * (a.u + b.u);
  m.w = 0.5 * (a.w + b.w);
  m.p = 0.5 * (a.p + b.p);
  m.v = 0.5 * (a.v + b.v);
  m.pi = b.pi;
  return m;
}

StateVector difference(const StateVector& a, const StateVector& b) {
  StateVector m;
  m.u = a.u - b.u;
  m.w = a.w - b.w;
  m.p = a.p - b.p;
  m.v = a.v - b.v;
  m.pi = a.pi - b.pi;
  return m;
}

}  // namespace

Vector project_divergence_free(const FormSet& f, const Vector& v) {
  const int nv = f.size(Field::V), npi = f.size(Field::Pi);
  if (v.size() != nv) throw SpaceError("projection input has the wrong length");
  if (v.norm() == 0.0) return Vector::Zero(nv);
  const SparseMatrix bt = f.divergence.transpose();
  const SparseMatrix k = stack_blocks({{&f.mass_v, &bt}, {&f.divergence, nullptr}}, {nv, npi}, {nv, npi});
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  const Eigen::SparseMatrix<double> col(k);
  lu.compute(col);
  if (lu.info() != Eigen::Success) throw SolverError("divergence-free projection is singular");
  Vector rhs = Vector::Zero(nv + npi);
  rhs.head(nv) = f.mass_v * v;
  const Vector x = lu.solve(rhs);
  return x.head(nv);
}

StateVector initialize_state(const FormSet& f, const InitialData& data) {
  const SpaceSet& s = *f.spaces;
  const MaterialParams& m = f.params;
  StateVector y = StateVector::zeros(s);
  y.u = coeffs_or_interpolant(s, Field::U, data.u0_coeffs, data.u0);
  y.w = coeffs_or_interpolant(s, Field::W, data.u1_coeffs, data.u1);
  y.v = project_divergence_free(f, coeffs_or_interpolant(s, Field::V, data.v0_coeffs, data.v0));
  if (!data.d0) return y;  // compatible content: p_b(0) = 0
  if (m.c0 == 0.0) {
    const double defect = compatibility_defect(s, y.u, data.d0, m.alpha);
    if (defect > 1e-10)
      throw ParameterError("c0 = 0 requires d0 = alpha div u0; L2 defect is " + std::to_string(defect));
    return y;
  }
  // Project (d0 - alpha div u0) / c0 onto the pressure space without the
  // Dirichlet rows, then keep the free values.
  SpaceOptions o = s.options();
  o.dirichlet = false;
  const auto open = build_spaces(s.grid_ptr(), o);
  const SparseMatrix mass = kernels::mass(*open, Field::P, 1.0, Execution::Serial);
  const SparseMatrix div = kernels::divergence_rows_scalar(*open, Field::P, Field::U, m.alpha, Execution::Serial);
  const Vector u_open = lift(s.scalar(Field::U), open->scalar(Field::U), s.components(Field::U), y.u);
  const Vector rhs = (assemble_volume_load(*open, Field::P, data.d0) - div * u_open) / m.c0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt{Eigen::SparseMatrix<double>(mass)};
  if (ldlt.info() != Eigen::Success) throw SolverError("pressure mass matrix is singular");
  const Vector p_open = ldlt.solve(rhs);
  const ScalarSpace& ps = s.biot_pressure();
  for (int i = 0; i < ps.num_free(); ++i) y.p[i] = p_open[open->biot_pressure().free_of_raw(ps.raw_of_free(i))];
  return y;
}

TimeStepper::TimeStepper(std::shared_ptr<const FormSet> forms, std::shared_ptr<const InterfaceSet> iface,
                         const TransientConfig& cfg)
    : forms_(std::move(forms)), iface_(std::move(iface)), cfg_(cfg) {
  cfg_.validate();
  const double eps = 1.0 / (theta_of(cfg_.scheme) * cfg_.dt);
  system_ = assemble_resolvent(forms_, iface_, eps);
}

StateVector TimeStepper::step(const StateVector& y, const SourceFunction& sources) const {
  const FormSet& f = *forms_;
  const SpaceSet& s = *f.spaces;
  const double e = system_->eps();
  const double t1 = y.time + cfg_.dt;
  WeakLoads l;
  l.w = e * (f.mass_b * y.w);
  l.p = e * (f.mass_c0 * y.p);
  l.v = e * (f.mass_f * y.v);
  l.pi = Vector::Zero(s.size(Field::Pi));
  Vector f1 = e * y.u;
  if (cfg_.scheme == TimeScheme::CrankNicolson) {
    add_scaled(l, apply_generator(f, *iface_, y), -1.0);
    f1 += y.w;
  }
  if (sources) {
    const WeakLoads g1 = checked(s, sources(t1));
    if (cfg_.scheme == TimeScheme::BackwardEuler) {
      add_scaled(l, g1, 1.0);
    } else {
      const WeakLoads g0 = checked(s, sources(y.time));
      l.w += g0.w + g1.w;
      l.p += g0.p + g1.p;
      l.v += g0.v + g1.v;
      l.pi += g1.pi;
    }
  }
  StateVector next = system_->solve_loads(l, f1);
  // The Crank-Nicolson solve returns twice the mid-point multiplier.
  if (cfg_.scheme == TimeScheme::CrankNicolson) next.pi *= 0.5;
  next.time = t1;
  return next;
}

Trajectory run_transient(std::shared_ptr<const FormSet> forms, std::shared_ptr<const InterfaceSet> iface,
                         const StateVector& y0, const TransientConfig& cfg, const SourceFunction& sources) {
  const TimeStepper stepper(forms, iface, cfg);
  const FormSet& f = *forms;
  const SpaceSet& s = *f.spaces;
  y0.validate(s);
  const MaterialParams& m = f.params;
  const bool be = cfg.scheme == TimeScheme::BackwardEuler;
  const int steps = cfg.num_steps();

  Trajectory tr;
  EnergyReport r0;
  r0.time = y0.time;
  r0.e = total_energy(f, y0);
  r0.slip_norm = std::sqrt(std::max(dissipation(f, *iface, y0).slip / m.beta, 0.0));
  tr.energy.push_back(r0);
  tr.states.push_back(y0);

  StateVector y = y0;
  for (int n = 0; n < steps; ++n) {
    StateVector next;
    try {
      next = stepper.step(y, sources);
    } catch (const SolverError& err) {
      throw SolverError("step " + std::to_string(n + 1) + ": " + err.what());
    }
    const EnergyReport& prev = tr.energy.back();
    EnergyReport r;
    r.time = next.time;
    r.e = total_energy(f, next);
    const Dissipation dn = dissipation(f, *iface, next);
    r.slip_norm = std::sqrt(std::max(dn.slip / m.beta, 0.0));
    double rate, slip, pw = 0.0, increment = 0.0;
    if (be) {
      rate = dn.total();
      slip = dn.slip;
      increment = 0.5 * x_inner(f, difference(next, y), difference(next, y));
      if (sources) pw = work(checked(s, sources(next.time)), next);
    } else {
      const StateVector mid = midpoint(y, next);
      const Dissipation dm = dissipation(f, *iface, mid);
      rate = dm.total();
      slip = dm.slip;
      if (sources) {
        WeakLoads g = checked(s, sources(y.time));
        add_scaled(g, checked(s, sources(next.time)), 1.0);
        pw = 0.5 * work(g, mid);
      }
    }
    r.d_cum = prev.d_cum + cfg.dt * rate;
    r.slip_cum = prev.slip_cum + cfg.dt * slip;
    r.work_cum = prev.work_cum + cfg.dt * pw;
    r.identity_residual = r.e + increment + cfg.dt * rate - prev.e - cfg.dt * pw;
    tr.energy.push_back(r);
    y = std::move(next);
    if ((n + 1) % cfg.output_stride == 0 || n + 1 == steps) tr.states.push_back(y);
  }
  return tr;
}

}  // namespace poroflux
