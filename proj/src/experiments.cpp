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

#include "poroflux/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>

#include "poroflux/errors.hpp"
#include "poroflux/manufactured.hpp"
#include "poroflux/parallel.hpp"

namespace poroflux {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string version_tag(const std::string& what) { return "poroflux-csv v1 " + what; }

std::vector<int> levels_or(const RunConfig& cfg, std::vector<int> fallback) {
  return cfg.refinements.empty() ? fallback : cfg.refinements;
}

Vector random_vector(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(gen);
  return v;
}

double observed_order(double e_prev, double e, double h_prev, double h) {
  if (!(e_prev > 0.0) || !(e > 0.0)) return kNaN;
  return std::log(e_prev / e) / std::log(h_prev / h);
}

/// Runs body(i) for i in [0, n) concurrently and rethrows the first failure by index.
template <class Body>
void run_independent(int n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  parallel_for(n, Execution::Parallel, [&](std::ptrdiff_t i) {
    try {
      body(static_cast<int>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// sqrt(u^T A_E u + w^T M_b w + v^T M_f v): the X norm without the c0 term.
double c0_free_norm(const FormSet& f, const StateVector& a, const StateVector& b) {
  const Vector du = a.u - b.u, dw = a.w - b.w, dv = a.v - b.v;
  return std::sqrt(std::max(du.dot(f.elastic * du) + dw.dot(f.mass_b * dw) + dv.dot(f.mass_f * dv), 0.0));
}

ManufacturedSolution study_solution(int dim) { return dim == 2 ? trigonometric_solution() : polynomial_solution(dim); }

}  // namespace

Discretization discretize(const GridSpec& grid, const SpaceOptions& opts, const MaterialParams& m, Execution exec) {
  Discretization d;
  d.spaces = build_spaces(grid, opts);
  d.forms = std::make_shared<FormSet>(assemble_forms(d.spaces, m, exec));
  d.iface = std::make_shared<InterfaceSet>(assemble_interface(*d.spaces, m, exec));
  return d;
}

StateVector make_initial_state(const FormSet& f, InitialKind kind, std::uint64_t seed, bool compatible) {
  const SpaceSet& s = *f.spaces;
  if (kind == InitialKind::Zero) return StateVector::zeros(s);
  const int d = s.dim();
  InitialData data;
  if (kind == InitialKind::Random) {
    std::mt19937_64 gen(seed);
    data.u0_coeffs = random_vector(s.size(Field::U), gen);
    data.u1_coeffs = random_vector(s.size(Field::W), gen);
    data.v0_coeffs = random_vector(s.size(Field::V), gen);
    StateVector y = initialize_state(f, data);
    if (!compatible && f.params.c0 > 0.0) y.p = random_vector(s.size(Field::P), gen);
    return y;
  }
  data.u0 = [d](const Point& x, double* o) {
    const double z = x[d - 1];
    for (int c = 0; c < d; ++c) o[c] = 0.0;
    o[0] = std::sin(2 * std::numbers::pi * x[0]) * (1 - z);
    o[d - 1] = z * (1 - z);
  };
  data.v0 = [d](const Point& x, double* o) {
    const double z = x[d - 1];
    for (int c = 0; c < d; ++c) o[c] = 0.0;
    o[0] = (1 + z) * (1 + z);
  };
  if (!compatible && f.params.c0 > 0.0)
    data.d0 = [d](const Point& x, double* o) { o[0] = std::cos(2 * std::numbers::pi * x[0]) * (1 - x[d - 1]); };
  return initialize_state(f, data);
}

MmsStudy run_mms_study(const RunConfig& cfg) { return run_mms_study(cfg, study_solution(cfg.grid.dimension)); }

MmsStudy run_mms_study(const RunConfig& cfg, const ManufacturedSolution& sol) {
  const std::vector<int> levels = levels_or(cfg, {8, 16, 32});
  const int dim = cfg.grid.dimension;
  if (sol.dim != dim) throw ConfigError("manufactured solution dimension does not match the grid");
  struct Errors {
    double h, u, p, v, pi, gu, gp, gv;
  };
  std::vector<Errors> errs(levels.size());
  run_independent(static_cast<int>(levels.size()), [&](int i) {
    const int n = levels[i];
    const Discretization disc = discretize(GridSpec{dim, n, n, n}, cfg.space_options(), cfg.materials);
    const auto sys = assemble_resolvent(disc.forms, disc.iface, 1.0);
    const StateVector y = sys->solve(manufactured_resolvent_data(*sys, sol)).first;
    const SpaceSet& s = *disc.spaces;
    errs[i] = {1.0 / n,
               field_error(s, Field::U, y.u, sol, NormKind::L2),
               field_error(s, Field::P, y.p, sol, NormKind::L2),
               field_error(s, Field::V, y.v, sol, NormKind::L2),
               field_error(s, Field::Pi, y.pi, sol, NormKind::L2),
               field_error(s, Field::U, y.u, sol, NormKind::H1semi),
               field_error(s, Field::P, y.p, sol, NormKind::H1semi),
               field_error(s, Field::V, y.v, sol, NormKind::H1semi)};
  });
  MmsStudy out{CsvTable(version_tag("mms"), {"h", "err_u_L2", "err_p_L2", "err_v_L2", "order_u", "order_p", "order_v"}),
               CsvTable(version_tag("mms_energy"), {"h", "err_u_H1", "err_p_H1", "err_v_H1", "err_pi_L2", "order_u",
                                                    "order_p", "order_v", "order_pi"})};
  for (size_t i = 0; i < errs.size(); ++i) {
    const Errors& e = errs[i];
    const Errors* p = i ? &errs[i - 1] : nullptr;
    auto ord = [&](double Errors::*m) { return p ? observed_order(p->*m, e.*m, p->h, e.h) : kNaN; };
    out.l2.add_row({e.h, e.u, e.p, e.v, ord(&Errors::u), ord(&Errors::p), ord(&Errors::v)});
    out.energy.add_row(
        {e.h, e.gu, e.gp, e.gv, e.pi, ord(&Errors::gu), ord(&Errors::gp), ord(&Errors::gv), ord(&Errors::pi)});
  }
  return out;
}

CsvTable run_c0_study(const RunConfig& cfg) {
  std::vector<double> c0s;
  for (int k = 0; k <= cfg.c0_levels; ++k) c0s.push_back(std::ldexp(1.0, -k));
  c0s.push_back(0.0);
  const int n = static_cast<int>(c0s.size());
  std::vector<Trajectory> runs(n);
  std::vector<std::shared_ptr<const FormSet>> forms(n);
  TransientConfig tc = cfg.time;
  tc.output_stride = 1;
  // Displacement and velocities are independent of c0; p_b(0) = 0 for every member.
  run_independent(n, [&](int i) {
    MaterialParams m = cfg.materials;
    m.c0 = c0s[i];
    const Discretization disc = discretize(cfg.grid, cfg.space_options(), m);
    const StateVector y0 = make_initial_state(*disc.forms, cfg.initial, cfg.seed, true);
    runs[i] = run_transient(disc.forms, disc.iface, y0, tc);
    forms[i] = disc.forms;
  });
  auto sup_diff = [&](int a, int b) {
    double sup = 0.0;
    for (size_t t = 0; t < runs[a].states.size(); ++t)
      sup = std::max(sup, c0_free_norm(*forms[a], runs[a].states[t], runs[b].states[t]));
    return sup;
  };
  CsvTable table(version_tag("c0study"), {"c0", "diff_next", "diff_zero", "sup_sqrt_c0_p"});
  for (int i = 0; i < n; ++i) {
    double sup_p = 0.0;
    for (const StateVector& y : runs[i].states)
      sup_p = std::max(sup_p, std::sqrt(c0s[i] * std::max(y.p.dot(forms[i]->mass_p * y.p), 0.0)));
    // diff_next pairs c0 with c0 / 2; the smallest positive member is compared with c0 = 0 only.
    table.add_row({c0s[i], i + 2 < n ? sup_diff(i, i + 1) : kNaN, sup_diff(i, n - 1), sup_p});
  }
  return table;
}

TransientRun run_decay_study(const RunConfig& cfg) {
  const Discretization disc = discretize(cfg.grid, cfg.space_options(), cfg.materials, Execution::Parallel);
  const StateVector y0 = make_initial_state(*disc.forms, cfg.initial, cfg.seed);
  TransientRun out{CsvTable(version_tag("decay"), {"t", "e", "d_cum", "identity_residual", "slip_cum"}),
                   run_transient(disc.forms, disc.iface, y0, cfg.time)};
  for (const EnergyReport& r : out.trajectory.energy)
    out.table.add_row({r.time, r.e, r.d_cum, r.identity_residual, r.slip_cum});
  return out;
}

TransientRun run_transient_experiment(const RunConfig& cfg) {
  const Discretization disc = discretize(cfg.grid, cfg.space_options(), cfg.materials, Execution::Parallel);
  const SpaceSet& s = *disc.spaces;
  const StateVector y0 = make_initial_state(*disc.forms, cfg.initial, cfg.seed);
  TransientRun out{CsvTable(version_tag("transient"), {"step", "t", "e", "d_cum", "slip_cum", "identity_residual",
                                                        "slip_norm", "u_L2", "w_L2", "p_L2", "v_L2", "pi_L2"}),
                   run_transient(disc.forms, disc.iface, y0, cfg.time)};
  const auto& energy = out.trajectory.energy;
  for (const StateVector& y : out.trajectory.states) {
    const int step = static_cast<int>(std::lround((y.time - y0.time) / cfg.time.dt));
    const EnergyReport& r = energy.at(step);
    out.table.add_row({static_cast<double>(step), r.time, r.e, r.d_cum, r.slip_cum, r.identity_residual, r.slip_norm,
                       norm(s, Field::U, NormKind::L2, y.u), norm(s, Field::W, NormKind::L2, y.w),
                       norm(s, Field::P, NormKind::L2, y.p), norm(s, Field::V, NormKind::L2, y.v),
                       norm(s, Field::Pi, NormKind::L2, y.pi)});
  }
  return out;
}

ResolventStudy run_resolvent_study(const RunConfig& cfg) {
  const std::vector<int> levels = levels_or(cfg, {4, 8, 16});
  const int dim = cfg.grid.dimension;
  const ManufacturedSolution sol = study_solution(dim);
  const size_t n = levels.size();
  ResolventStudy out{CsvTable(version_tag("resolvent"),
                              {"h", "eps", "err_u_L2", "err_p_L2", "err_v_L2", "err_pi_L2", "kinematic", "bjs",
                               "pressure_balance", "stress_balance", "algebraic_residual", "harmonic_mismatch"}),
                     std::vector<StateVector>(n), std::vector<std::shared_ptr<const SpaceSet>>(n)};
  std::vector<std::vector<double>> rows(n);
  run_independent(static_cast<int>(n), [&](int i) {
    const int m = levels[i];
    const Discretization disc = discretize(GridSpec{dim, m, m, m}, cfg.space_options(), cfg.materials);
    const auto sys = assemble_resolvent(disc.forms, disc.iface, cfg.eps);
    const ManufacturedData md = manufactured_data(sol, cfg.materials, cfg.eps);
    const auto [y, rep] = sys->solve(manufactured_resolvent_data(*sys, sol));
    const SpaceSet& s = *disc.spaces;
    rows[i] = {1.0 / m,
               cfg.eps,
               field_error(s, Field::U, y.u, sol, NormKind::L2, cfg.eps),
               field_error(s, Field::P, y.p, sol, NormKind::L2, cfg.eps),
               field_error(s, Field::V, y.v, sol, NormKind::L2, cfg.eps),
               field_error(s, Field::Pi, y.pi, sol, NormKind::L2, cfg.eps),
               rep.kinematic,
               rep.bjs,
               rep.pressure_balance,
               rep.stress_balance,
               rep.algebraic_residual,
               harmonic_pressure_check(y, *disc.forms, md.forcing_v, md.sources.g_p)};
    out.solutions[i] = y;
    out.spaces[i] = disc.spaces;
  });
  for (auto& r : rows) out.table.add_row(std::move(r));
  return out;
}

InfsupStudy run_infsup_study(const RunConfig& cfg) {
  const int dim = cfg.grid.dimension;
  const std::vector<int> levels = levels_or(cfg, dim == 2 ? std::vector<int>{4, 8, 16} : std::vector<int>{2, 4, 8});
  InfsupStudy out{CsvTable(version_tag("infsup"),
                           {"n", "beta_taylor_hood", "beta_q1q1", "constructive_ratio_max", "div_defect_const"}),
                  CsvTable(version_tag("stability"),
                           {"dofs", "infsup_constant", "z_ellipticity_constant", "max_symmetric_eigenvalue",
                            "symmetric_scale", "min_singular_value", "max_singular_value"})};
  SpaceOptions unstable = cfg.space_options();
  unstable.fluid_velocity = ElementFamily::Q1;
  unstable.allow_unstable = true;
  for (int n : levels) {
    const GridSpec g{dim, n, 2, n};
    const Discretization th = discretize(g, cfg.space_options(), cfg.materials);
    const Discretization q1 = discretize(g, unstable, cfg.materials);
    std::mt19937_64 gen(cfg.seed);
    double worst = 0.0;
    for (int k = 0; k < cfg.samples; ++k)
      worst = std::max(worst,
                       constructive_infsup_check(*th.forms, random_vector(th.spaces->size(Field::Pi), gen)).ratio);
    const Vector ones = Vector::Ones(th.spaces->size(Field::Pi));
    out.table.add_row({static_cast<double>(n), infsup_constant(*th.forms), infsup_constant(*q1.forms), worst,
                       constructive_infsup_check(*th.forms, ones).div_defect});
  }
  const Discretization disc = discretize(cfg.grid, cfg.space_options(), cfg.materials);
  const int dofs = disc.forms->state_size() + disc.spaces->size(Field::Pi);
  StabilityReport rep;
  rep.infsup_constant = infsup_constant(*disc.forms);
  const bool dense_ok = dofs <= cfg.max_dofs;
  rep.z_ellipticity_constant =
      dense_ok ? z_ellipticity_constant(*assemble_resolvent(disc.forms, disc.iface, cfg.eps), cfg.max_dofs) : kNaN;
  if (dense_ok && cfg.materials.c0 > 0.0) {
    const StabilityReport g = generator_checks(*disc.forms, *disc.iface, cfg.max_dofs);
    rep.max_symmetric_eigenvalue = g.max_symmetric_eigenvalue;
    rep.symmetric_scale = g.symmetric_scale;
    rep.min_singular_value = g.min_singular_value;
    rep.max_singular_value = g.max_singular_value;
  } else {
    rep.max_symmetric_eigenvalue = rep.symmetric_scale = rep.min_singular_value = rep.max_singular_value = kNaN;
  }
  out.stability.add_row({static_cast<double>(dofs), rep.infsup_constant, rep.z_ellipticity_constant,
                         rep.max_symmetric_eigenvalue, rep.symmetric_scale, rep.min_singular_value,
                         rep.max_singular_value});
  return out;
}

std::vector<std::string> run_experiment(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  cfg.validate();
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + cfg.output_dir + "': " + ec.message());
  std::vector<std::string> written;
  auto emit_csv = [&](const CsvTable& t, const std::string& name) {
    const std::string p = (dir / name).string();
    t.write(p);
    written.push_back(p);
  };
  auto emit_fields = [&](const SpaceSet& s, const StateVector& y, int index) {
    char name[32];
    std::snprintf(name, sizeof name, "fields_%04d.vtk", index);
    const std::string p = (dir / name).string();
    write_vtk(p, s, y);
    written.push_back(p);
  };
  auto emit_transient = [&](const TransientRun& run) {
    emit_csv(run.table, "run.csv");
    if (cfg.write_svg) {
      const std::string p = (dir / "energy.svg").string();
      write_energy_svg(p, run.trajectory.energy);
      written.push_back(p);
    }
    if (cfg.write_fields) {
      const auto spaces = build_spaces(cfg.grid, cfg.space_options());
      for (size_t i = 0; i < run.trajectory.states.size(); ++i)
        emit_fields(*spaces, run.trajectory.states[i], static_cast<int>(i));
    }
  };
  switch (cfg.experiment) {
    case Experiment::Mms: {
      const MmsStudy st = run_mms_study(cfg);
      emit_csv(st.l2, "run.csv");
      emit_csv(st.energy, "mms_energy.csv");
      break;
    }
    case Experiment::C0Study:
      emit_csv(run_c0_study(cfg), "run.csv");
      break;
    case Experiment::Decay:
      emit_transient(run_decay_study(cfg));
      break;
    case Experiment::Transient:
      emit_transient(run_transient_experiment(cfg));
      break;
    case Experiment::Resolvent: {
      const ResolventStudy st = run_resolvent_study(cfg);
      emit_csv(st.table, "run.csv");
      if (cfg.write_fields)
        for (size_t i = 0; i < st.solutions.size(); ++i) emit_fields(*st.spaces[i], st.solutions[i], static_cast<int>(i));
      break;
    }
    case Experiment::Infsup: {
      const InfsupStudy st = run_infsup_study(cfg);
      emit_csv(st.table, "run.csv");
      emit_csv(st.stability, "stability.csv");
      break;
    }
  }
  return written;
}

}  // namespace poroflux
