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

#include "poroflux/resolvent.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>

#include "poroflux/errors.hpp"

namespace poroflux {

WeakLoads WeakLoads::zeros(const SpaceSet& s) {
  return {Vector::Zero(s.size(Field::W)), Vector::Zero(s.size(Field::P)), Vector::Zero(s.size(Field::V)),
          Vector::Zero(s.size(Field::Pi))};
}

namespace {

Vector or_zero(const Vector& v, int n, const char* name) {
  if (v.size() == 0) return Vector::Zero(n);
  if (v.size() != n)
    throw SpaceError(std::string("resolvent datum ") + name + " has length " + std::to_string(v.size()) +
                     ", expected " + std::to_string(n));
  return v;
}

}  // namespace

ResolventSystem::ResolventSystem(std::shared_ptr<const FormSet> forms,
                                 std::shared_ptr<const InterfaceSet> iface, double eps)
    : forms_(std::move(forms)), iface_(std::move(iface)), eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ParameterError("resolvent parameter eps must be > 0, got " + std::to_string(eps));
  const FormSet& f = *forms_;
  const InterfaceSet& is = *iface_;
  sizes_ = {f.size(Field::U), f.size(Field::P), f.size(Field::V), f.size(Field::Pi)};
  k_wp_ = f.coupling_u + is.pn_u;
  k_pw_ = f.coupling_p + is.pq_u;
  const double e = eps;
  const SparseMatrix a_uu = (e * e) * f.mass_b + f.elastic + e * is.s_ww;
  const SparseMatrix a_pp = f.mass_c0 + (1.0 / e) * f.diffusion;
  const SparseMatrix a_vv = f.mass_f + (1.0 / e) * (f.viscous + is.s_vv);
  const SparseMatrix bt = f.divergence.transpose();
  const std::vector<int> sz(sizes_.begin(), sizes_.end());
  matrix_ = stack_blocks({{&a_uu, &k_wp_, &is.s_wv, nullptr},
                          {&k_pw_, &a_pp, &is.pq_v, nullptr},
                          {&is.s_vw, &is.pn_v, &a_vv, &bt},
                          {nullptr, nullptr, &f.divergence, nullptr}},
                         sz, sz,
                         {{1, 1, 1, 0}, {1, 1, 1 / e, 0}, {1, 1 / e, 1, 1 / e}, {0, 0, 1 / e, 0}});
  lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>>();
  const Eigen::SparseMatrix<double> col(matrix_);
  lu_->analyzePattern(col);
  lu_->factorize(col);
  if (lu_->info() != Eigen::Success)
    throw SolverError("resolvent factorization failed (singular system): " + lu_->lastErrorMessage());
}

WeakLoads ResolventSystem::loads(const ResolventData& data) const {
  const FormSet& f = *forms_;
  const SpaceSet& s = *f.spaces;
  const int d = s.dim();
  WeakLoads l;
  l.w = f.mass_b * or_zero(data.f2, sizes_[0], "f2") + or_zero(data.load_w, sizes_[0], "load_w");
  l.p = f.mass_c0 * or_zero(data.f3, sizes_[1], "f3") + or_zero(data.load_p, sizes_[1], "load_p");
  l.v = f.mass_f * or_zero(data.f4, sizes_[2], "f4") + or_zero(data.load_v, sizes_[2], "load_v");
  l.pi = or_zero(data.load_pi, sizes_[3], "load_pi");
  const InterfaceSources& g = data.sources;
  if (g.g_tau || g.g_sigma || g.g_p) {
    auto traction = [&](const Point& x, double* out, bool solid) {
      double tmp[3] = {0, 0, 0};
      for (int i = 0; i < 3; ++i) out[i] = 0.0;
      if (g.g_tau) {
        g.g_tau(x, tmp);
        for (int i = 0; i < d - 1; ++i) out[i] += tmp[i];
      }
      if (g.g_p) {
        g.g_p(x, tmp);
        out[d - 1] += tmp[0];
      }
      if (solid && g.g_sigma) {
        g.g_sigma(x, tmp);
        for (int i = 0; i < d; ++i) out[i] += tmp[i];
      }
    };
    l.w -= assemble_interface_load(s, Field::W, [&](const Point& x, double* o) { traction(x, o, true); });
    l.v += assemble_interface_load(s, Field::V, [&](const Point& x, double* o) { traction(x, o, false); });
  }
  if (g.g_n) l.p -= assemble_interface_load(s, Field::P, g.g_n);
  return l;
}

Vector ResolventSystem::solve_raw(const Vector& rhs, double* residual) const {
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    if (residual) *residual = 0.0;
    return Vector::Zero(rhs.size());
  }
  Vector x = lu_->solve(rhs);
  Vector r = rhs - matrix_ * x;
  for (int it = 0; it < 4 && r.norm() > 1e-15 * bnorm; ++it) {
    x += lu_->solve(r);
    r = rhs - matrix_ * x;
  }
  const double rel = r.norm() / bnorm;
  if (residual) *residual = rel;
  if (!x.allFinite() || !(rel <= 1e-10))
    throw SolverError("resolvent solve missed the residual contract: relative residual " + std::to_string(rel));
  return x;
}

StateVector ResolventSystem::solve_loads(const WeakLoads& l, const Vector& f1_in, double* residual) const {
  const FormSet& f = *forms_;
  const InterfaceSet& is = *iface_;
  const double e = eps_;
  const Vector f1 = or_zero(f1_in, sizes_[0], "f1");
  Vector rhs(sizes_[0] + sizes_[1] + sizes_[2] + sizes_[3]);
  rhs << l.w + e * (f.mass_b * f1) + is.s_ww * f1, (l.p + k_pw_ * f1) / e, (l.v + is.s_vw * f1) / e, l.pi / e;
  const Vector x = solve_raw(rhs, residual);
  StateVector y;
  int o = 0;
  y.u = x.segment(o, sizes_[0]);
  o += sizes_[0];
  y.p = x.segment(o, sizes_[1]);
  o += sizes_[1];
  y.v = x.segment(o, sizes_[2]);
  o += sizes_[2];
  y.pi = x.segment(o, sizes_[3]);
  y.w = e * y.u - f1;
  return y;
}

std::pair<StateVector, SolveReport> ResolventSystem::solve(const ResolventData& data) const {
  double res = 0.0;
  StateVector y = solve_loads(loads(data), data.f1, &res);
  SolveReport rep = verify_strong(y, data);
  rep.algebraic_residual = res;
  return {std::move(y), rep};
}

WeakLoads apply_generator(const FormSet& f, const InterfaceSet& is, const StateVector& y) {
  WeakLoads r;
  r.w = f.elastic * y.u + f.coupling_u * y.p + is.pn_u * y.p + is.s_ww * y.w + is.s_wv * y.v;
  r.p = f.coupling_p * y.w + is.pq_u * y.w + f.diffusion * y.p + is.pq_v * y.v;
  r.v = is.pn_v * y.p + is.s_vw * y.w + f.viscous * y.v + is.s_vv * y.v;
  r.pi = Vector::Zero(f.size(Field::Pi));
  return r;
}

WeakLoads ResolventSystem::apply_w_form(const StateVector& y) const {
  const FormSet& f = *forms_;
  const double e = eps_;
  WeakLoads r = apply_generator(f, *iface_, y);
  r.w += e * (f.mass_b * y.w);
  r.p += e * (f.mass_c0 * y.p);
  r.v += e * (f.mass_f * y.v) + f.divergence.transpose() * y.pi;
  r.pi = f.divergence * y.v;
  return r;
}

WeakLoads ResolventSystem::loads_for(const StateVector& y) const { return apply_w_form(y); }

std::vector<char> interface_dof_mask(const SpaceSet& s, Field f) {
  const ScalarSpace& sc = s.scalar(f);
  const int d = s.dim();
  const bool biot = sc.side() == Side::Biot;
  std::vector<char> mask(s.size(f), 0);
  for (int r = 0; r < sc.num_raw(); ++r) {
    const auto idx = sc.raw_lattice_index(r);
    const bool on = biot ? idx[d - 1] == 0 : idx[d - 1] == sc.lattice()[d - 1] - 1;
    const int fi = sc.free_of_raw(r);
    if (!on || fi < 0) continue;
    for (int c = 0; c < s.components(f); ++c) mask[c * sc.num_free() + fi] = 1;
  }
  return mask;
}

namespace {

/// sqrt(r^T G^{-1} r) restricted to the dofs selected by `keep`.
double dual_norm(const SparseMatrix& gram, const Vector& r, const std::vector<char>& keep, bool keep_value) {
  std::vector<int> idx;
  for (int i = 0; i < r.size(); ++i)
    if ((keep[i] != 0) == keep_value) idx.push_back(i);
  if (idx.empty()) return 0.0;
  std::vector<int> pos(r.size(), -1);
  for (size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<int>(i);
  std::vector<Triplet> t;
  for (int row = 0; row < gram.outerSize(); ++row) {
    if (pos[row] < 0) continue;
    for (SparseMatrix::InnerIterator it(gram, row); it; ++it)
      if (pos[it.col()] >= 0) t.emplace_back(pos[row], pos[it.col()], it.value());
  }
  Eigen::SparseMatrix<double> g(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
  g.setFromTriplets(t.begin(), t.end());
  Vector rr(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) rr[i] = r[idx[i]];
  if (rr.norm() == 0.0) return 0.0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(g);
  if (ldlt.info() != Eigen::Success) throw SolverError("dual-norm Gram is singular");
  const Vector z = ldlt.solve(rr);
  return std::sqrt(std::max(rr.dot(z), 0.0));
}

double dual_norm_full(const SparseMatrix& gram, const Vector& r, const std::vector<char>& mask) {
  Vector masked = r;
  for (int i = 0; i < r.size(); ++i)
    if (!mask[i]) masked[i] = 0.0;
  std::vector<char> all(r.size(), 1);
  return dual_norm(gram, masked, all, true);
}

}  // namespace

SolveReport ResolventSystem::verify_strong(const StateVector& y, const ResolventData& data) const {
  const FormSet& f = *forms_;
  const SpaceSet& s = *f.spaces;
  const MaterialParams& mp = f.params;
  y.validate(s);
  const WeakLoads op = apply_w_form(y);
  const WeakLoads ld = loads(data);
  const Vector rw = op.w - ld.w, rp = op.p - ld.p, rv = op.v - ld.v;

  const SparseMatrix gu = f.elastic + f.mass_u;
  const SparseMatrix gp = f.gradient_p + f.mass_p;
  const SparseMatrix gv = f.strain_gram_v + f.mass_v;
  const auto mu = interface_dof_mask(s, Field::U);
  const auto mpm = interface_dof_mask(s, Field::P);
  const auto mv = interface_dof_mask(s, Field::V);

  SolveReport rep;
  rep.momentum = dual_norm(gu, rw, mu, false);
  rep.biot_mass = dual_norm(gp, rp, mpm, false);
  rep.stokes = dual_norm(gv, rv, mv, false);
  const double iw = dual_norm_full(gu, rw, mu), ip = dual_norm_full(gp, rp, mpm),
               iv = dual_norm_full(gv, rv, mv);
  rep.interface_weak = std::sqrt(iw * iw + ip * ip + iv * iv);

  // Pointwise interface conditions from discrete traces.
  const int d = s.dim();
  const InterfaceMap imap = interface_map(s.grid());
  const InterfaceSources& g = data.sources;
  const auto& gp3 = Gauss3::points();
  const auto& gw3 = Gauss3::weights();
  const int nq = d == 2 ? 3 : 9;
  const Point hb = s.grid().biot.cell_size();
  double face_area = 1.0;
  for (int i = 0; i < d - 1; ++i) face_area *= hb[i];
  double kin = 0, bjs = 0, pb = 0, sb = 0;
  for (const auto& pr : imap.pairs) {
    for (int q = 0; q < nq; ++q) {
      const int qi = q % 3, qj = q / 3;
      const double wq = face_area * gw3[qi] * (d == 3 ? gw3[qj] : 1.0);
      Point rb{gp3[qi], d == 3 ? gp3[qj] : 0.0, 0.0}, rf = rb;
      rb[d - 1] = 0.0;
      rf[d - 1] = 1.0;
      const FieldSample su = evaluate_field(s, Field::U, y.u, pr.cell_b, rb);
      const FieldSample sw = evaluate_field(s, Field::W, y.w, pr.cell_b, rb);
      const FieldSample sp = evaluate_field(s, Field::P, y.p, pr.cell_b, rb);
      const FieldSample sv = evaluate_field(s, Field::V, y.v, pr.cell_f, rf);
      const FieldSample spi = evaluate_field(s, Field::Pi, y.pi, pr.cell_f, rf);
      const Cell& cb = s.grid().biot.cells[pr.cell_b];
      Point x{0, 0, 0};
      for (int i = 0; i < d; ++i) x[i] = cb.lo[i] + (cb.hi[i] - cb.lo[i]) * rb[i];
      double gn = 0, gpv = 0, gt[3] = {0, 0, 0}, gs[3] = {0, 0, 0};
      if (g.g_n) g.g_n(x, &gn);
      if (g.g_p) g.g_p(x, &gpv);
      if (g.g_tau) g.g_tau(x, gt);
      if (g.g_sigma) g.g_sigma(x, gs);
      const int n = d - 1;
      // sigma_f e_d and sigma_b e_d
      double sf[3] = {0, 0, 0}, sbv[3] = {0, 0, 0};
      double divu = 0.0;
      for (int i = 0; i < d; ++i) divu += su.grad[i][i];
      for (int i = 0; i < d; ++i) {
        sf[i] = mp.nu * (sv.grad[i][n] + sv.grad[n][i]);
        sbv[i] = mp.mu * (su.grad[i][n] + su.grad[n][i]);
      }
      sf[n] -= spi.value[0];
      sbv[n] += mp.lambda * divu - mp.alpha * sp.value[0];
      const double r_kin = mp.k * sp.grad[0][n] + (sv.value[n] - sw.value[n]) - gn;
      kin += wq * r_kin * r_kin;
      for (int t = 0; t < d - 1; ++t) {
        const double r = mp.beta * (sv.value[t] - sw.value[t]) + sf[t] - gt[t];
        bjs += wq * r * r;
      }
      const double r_p = sp.value[0] + sf[n] - gpv;
      pb += wq * r_p * r_p;
      for (int i = 0; i < d; ++i) {
        const double r = sbv[i] - sf[i] - gs[i];
        sb += wq * r * r;
      }
    }
  }
  rep.kinematic = std::sqrt(kin);
  rep.bjs = std::sqrt(bjs);
  rep.pressure_balance = std::sqrt(pb);
  rep.stress_balance = std::sqrt(sb);
  return rep;
}

std::shared_ptr<const ResolventSystem> assemble_resolvent(std::shared_ptr<const FormSet> forms,
                                                          std::shared_ptr<const InterfaceSet> iface,
                                                          double eps) {
  return std::make_shared<const ResolventSystem>(std::move(forms), std::move(iface), eps);
}

double harmonic_pressure_check(const StateVector& y, const FormSet& forms, const FieldFunction& fluid_forcing,
                               const FieldFunction& g_p) {
  const SpaceSet& s = *forms.spaces;
  const MaterialParams& mp = forms.params;
  if (s.fluid_velocity().scalar.order() < 2)
    throw SpaceError("harmonic pressure check needs a Q2 fluid velocity (second derivatives vanish for Q1)");
  y.validate(s);
  const int d = s.dim();
  const int n = d - 1;
  const ScalarSpace& ps = s.fluid_pressure();
  const int np = ps.num_free();

  // Dirichlet rows: free pi dofs on the interface, valued by nodal averages.
  std::vector<char> top(np, 0);
  Vector dval = Vector::Zero(np);
  std::vector<int> count(np, 0);
  const InterfaceMap imap = interface_map(s.grid());
  for (const auto& pr : imap.pairs) {
    const Cell& cf = s.grid().fluid.cells[pr.cell_f];
    for (int a = 0; a < ps.nodes_per_cell(); ++a) {
      const int raw = ps.cell_raw_node(cf, a);
      const auto idx = ps.raw_lattice_index(raw);
      if (idx[n] != ps.lattice()[n] - 1) continue;
      const int fi = ps.free_of_raw(raw);
      Point rf{0, 0, 0};
      for (int i = 0, rest = a; i < d; ++i, rest /= ps.order() + 1)
        rf[i] = static_cast<double>(rest % (ps.order() + 1)) / ps.order();
      Point rb = rf;
      rb[n] = 0.0;
      const FieldSample sp = evaluate_field(s, Field::P, y.p, pr.cell_b, rb);
      const FieldSample sv = evaluate_field(s, Field::V, y.v, pr.cell_f, rf);
      double gpv = 0.0;
      if (g_p) g_p(ps.raw_coordinate(raw), &gpv);
      dval[fi] += sp.value[0] + 2.0 * mp.nu * sv.grad[n][n] - gpv;
      count[fi] += 1;
      top[fi] = 1;
    }
  }
  for (int i = 0; i < np; ++i)
    if (count[i] > 0) dval[i] /= count[i];

  // Neumann load on the bottom boundary: -(nu lap v.e_d + F.e_d) q.
  const SubMesh& fm = s.grid().fluid;
  const auto bottom = fm.facets_at(-1.0);
  const Tabulation tq = Tabulation::face(ps.order(), d, 0.0);
  const Tabulation tv = Tabulation::face(s.fluid_velocity().scalar.order(), d, 0.0);
  const ScalarSpace& vs = s.fluid_velocity().scalar;
  Vector load = Vector::Zero(np);
  std::vector<int> qd, vd;
  for (const Facet& fct : bottom) {
    const Cell& cell = fm.cells[fct.cell];
    const CellBasis bq(tq, cell, d, true), bv(tv, cell, d, true);
    ps.cell_dofs(cell, qd);
    vs.cell_dofs(cell, vd);
    for (int q = 0; q < bq.num_points(); ++q) {
      double lap = 0.0;
      for (int a = 0; a < bv.num_nodes(); ++a) {
        if (vd[a] < 0) continue;
        double l = 0.0;
        for (int i = 0; i < d; ++i) l += bv.hess(q, a, i, i);
        lap += y.v[n * vs.num_free() + vd[a]] * l;
      }
      double fv[3] = {0, 0, 0};
      if (fluid_forcing) fluid_forcing(bq.point(q), fv);
      const double flux = -(mp.nu * lap + fv[n]);
      for (int a = 0; a < bq.num_nodes(); ++a)
        if (qd[a] >= 0) load[qd[a]] += bq.jxw(q) * flux * bq.value(q, a);
    }
  }

  const SparseMatrix lap = kernels::gradient_gram(s, Field::Pi, 1.0, Execution::Serial);
  std::vector<int> pos(np, -1), inner;
  for (int i = 0; i < np; ++i)
    if (!top[i]) {
      pos[i] = static_cast<int>(inner.size());
      inner.push_back(i);
    }
  Vector rhs(inner.size());
  for (size_t i = 0; i < inner.size(); ++i) rhs[i] = load[inner[i]];
  std::vector<Triplet> t;
  for (int r = 0; r < lap.outerSize(); ++r) {
    if (pos[r] < 0) continue;
    for (SparseMatrix::InnerIterator it(lap, r); it; ++it) {
      if (pos[it.col()] >= 0) t.emplace_back(pos[r], pos[it.col()], it.value());
      else rhs[pos[r]] -= it.value() * dval[it.col()];
    }
  }
  Eigen::SparseMatrix<double> k(static_cast<int>(inner.size()), static_cast<int>(inner.size()));
  k.setFromTriplets(t.begin(), t.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(k);
  if (ldlt.info() != Eigen::Success) throw SolverError("harmonic pressure Laplacian is singular");
  const Vector sol = ldlt.solve(rhs);
  Vector harm = dval;
  for (size_t i = 0; i < inner.size(); ++i) harm[inner[i]] = sol[i];
  const double diff = norm(s, Field::Pi, NormKind::L2, y.pi - harm);
  return diff / std::max(norm(s, Field::Pi, NormKind::L2, y.pi), 1.0);
}

}  // namespace poroflux
