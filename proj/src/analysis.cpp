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

#include "poroflux/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <numbers>

#include "poroflux/errors.hpp"

namespace poroflux {

using Dense = Eigen::MatrixXd;

EnergyReport energy_report(const FormSet& f, const InterfaceSet& is, const StateVector& y) {
  EnergyReport r;
  r.time = y.time;
  r.e = total_energy(f, y);
  r.slip_norm = std::sqrt(std::max(dissipation(f, is, y).slip / f.params.beta, 0.0));
  return r;
}

Vector fluid_content(const FormSet& f, const StateVector& y) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt{Eigen::SparseMatrix<double>(f.mass_p)};
  if (ldlt.info() != Eigen::Success) throw SolverError("pressure mass matrix is singular");
  return f.params.c0 * y.p + ldlt.solve(Vector(f.coupling_p * y.u));
}

namespace {

/// Orthonormal basis of the null space of B (rows pi, cols v).
Dense divergence_free_basis(const SparseMatrix& b) {
  const Dense bt = to_dense(b).transpose();
  Eigen::ColPivHouseholderQR<Dense> qr(bt);
  const int n = static_cast<int>(bt.rows());
  const int r = static_cast<int>(qr.rank());
  const Dense q = qr.householderQ() * Dense::Identity(n, n);
  return q.rightCols(n - r);
}

Dense block_diag_with_basis(const std::vector<int>& identity_sizes, const Dense& tail) {
  int rows = 0, cols = 0;
  for (int s : identity_sizes) rows += s, cols += s;
  Dense n = Dense::Zero(rows + tail.rows(), cols + tail.cols());
  int o = 0;
  for (int s : identity_sizes) {
    n.block(o, o, s, s).setIdentity();
    o += s;
  }
  n.block(rows, cols, tail.rows(), tail.cols()) = tail;
  return n;
}

Dense stack_dense(const std::vector<std::vector<const SparseMatrix*>>& blocks, const std::vector<int>& sz,
                  const std::vector<std::vector<double>>& scales = {}) {
  return to_dense(stack_blocks(blocks, sz, sz, scales));
}

}  // namespace

StabilityReport generator_checks(const FormSet& f, const InterfaceSet& is, int max_dofs) {
  const MaterialParams& m = f.params;
  if (!(m.c0 > 0.0)) throw ParameterError("generator checks need c0 > 0 (the X Gram is singular for c0 = 0)");
  if (!(m.k > 0.0)) throw ParameterError("generator checks need k > 0");
  const int nu = f.size(Field::U), np = f.size(Field::P), nv = f.size(Field::V);
  const int n = 2 * nu + np + nv;
  if (n > max_dofs)
    throw ParameterError("generator checks are dense; " + std::to_string(n) + " state dofs exceed the limit " +
                         std::to_string(max_dofs));
  // K on [u, w, p, v]: M dy/dt = -K y.
  const SparseMatrix k_wp = f.coupling_u + is.pn_u;
  const SparseMatrix k_pw = f.coupling_p + is.pq_u;
  const SparseMatrix k_vv = f.viscous + is.s_vv;
  const std::vector<int> sz{nu, nu, np, nv};
  const Dense k = stack_dense({{nullptr, &f.elastic, nullptr, nullptr},
                               {&f.elastic, &is.s_ww, &k_wp, &is.s_wv},
                               {nullptr, &k_pw, &f.diffusion, &is.pq_v},
                               {nullptr, &is.s_vw, &is.pn_v, &k_vv}},
                              sz, {{0, -1, 0, 0}, {1, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}});
  const Dense mx = to_dense(f.x_gram);
  const Dense basis = block_diag_with_basis({nu, nu, np}, divergence_free_basis(f.divergence));
  const Dense mz = basis.transpose() * mx * basis;
  const Dense kz = basis.transpose() * k * basis;
  const Dense sym = -0.5 * (kz + kz.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Dense> ges(sym, mz);
  if (ges.info() != Eigen::Success) throw SolverError("generalized eigensolver failed in generator checks");
  StabilityReport rep;
  rep.max_symmetric_eigenvalue = ges.eigenvalues().maxCoeff();
  rep.symmetric_scale = ges.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::LLT<Dense> llt(mz);
  if (llt.info() != Eigen::Success) throw SolverError("X Gram is not positive definite on the constraint set");
  const Dense linv_k = llt.matrixL().solve(kz);
  const Dense scaled = llt.matrixL().solve(linv_k.transpose()).transpose();
  Eigen::BDCSVD<Dense> svd(scaled);
  rep.min_singular_value = svd.singularValues().minCoeff();
  rep.max_singular_value = svd.singularValues().maxCoeff();
  return rep;
}

double z_ellipticity_constant(const ResolventSystem& sys, int max_dofs) {
  const FormSet& f = sys.forms();
  const auto bs = sys.block_sizes();
  const int n = bs[0] + bs[1] + bs[2];
  if (n > max_dofs)
    throw ParameterError("Z-ellipticity check is dense; " + std::to_string(n) + " dofs exceed the limit " +
                         std::to_string(max_dofs));
  const Dense a = to_dense(sys.matrix()).topLeftCorner(n, n);
  const SparseMatrix gu = f.elastic + f.mass_u;
  const SparseMatrix gp = f.gradient_p + f.mass_p;
  const SparseMatrix gv = f.strain_gram_v + f.mass_v;
  const Dense g = stack_dense({{&gu, nullptr, nullptr}, {nullptr, &gp, nullptr}, {nullptr, nullptr, &gv}},
                              {bs[0], bs[1], bs[2]});
  const Dense basis = block_diag_with_basis({bs[0], bs[1]}, divergence_free_basis(f.divergence));
  const Dense sz = basis.transpose() * (0.5 * (a + a.transpose())) * basis;
  const Dense gz = basis.transpose() * g * basis;
  Eigen::GeneralizedSelfAdjointEigenSolver<Dense> ges(sz, gz, Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) throw SolverError("generalized eigensolver failed in Z-ellipticity check");
  return ges.eigenvalues().minCoeff();
}

double infsup_from_matrices(const SparseMatrix& b, const SparseMatrix& g, const SparseMatrix& m) {
  if (b.cols() != g.rows() || b.rows() != m.rows()) throw SpaceError("inf-sup matrices have inconsistent sizes");
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt{Eigen::SparseMatrix<double>(g)};
  if (ldlt.info() != Eigen::Success) throw SolverError("velocity Gram is singular on free dofs");
  const Dense bt = to_dense(b).transpose();
  const Dense x = ldlt.solve(bt);
  Dense s = bt.transpose() * x;
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Dense> ges(s, to_dense(m), Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) throw SolverError("generalized eigensolver failed in inf-sup computation");
  const Vector ev = ges.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0)) return 0.0;
  double low = top;
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > 1e-12 * top) low = std::min(low, ev[i]);
  return std::sqrt(low);
}

double infsup_constant(const FormSet& f) { return infsup_from_matrices(f.divergence, f.strain_gram_v, f.mass_pi); }

double default_cutoff(const Point& x, int dim) {
  const double s = std::sin(std::numbers::pi * x[0]);
  return dim == 3 ? s * std::sin(std::numbers::pi * x[1]) : s;
}

namespace {

/// L2 norm over the fluid box of div omega + eta.
double divergence_defect(const SpaceSet& s, const Vector& omega, const Vector& eta) {
  const ScalarSpace& vs = s.scalar(Field::V);
  const ScalarSpace& ps = s.scalar(Field::Pi);
  const int d = s.dim();
  const Tabulation tv = Tabulation::volume(vs.order(), d);
  std::vector<Point> pts;
  std::vector<double> wts;
  for (int q = 0; q < tv.num_points(); ++q) pts.push_back(tv.point(q)), wts.push_back(tv.weight(q));
  const Tabulation tp(ps.order(), d, pts, wts);
  std::vector<int> vd, pd;
  double acc = 0.0;
  for (const Cell& cell : s.grid().fluid.cells) {
    const CellBasis bv(tv, cell, d), bp(tp, cell, d);
    vs.cell_dofs(cell, vd);
    ps.cell_dofs(cell, pd);
    for (int q = 0; q < bv.num_points(); ++q) {
      double r = 0.0;
      for (int c = 0; c < d; ++c)
        for (int a = 0; a < bv.num_nodes(); ++a)
          if (vd[a] >= 0) r += omega[c * vs.num_free() + vd[a]] * bv.grad(q, a, c);
      for (int a = 0; a < bp.num_nodes(); ++a)
        if (pd[a] >= 0) r += eta[pd[a]] * bp.value(q, a);
      acc += bv.jxw(q) * r * r;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

ConstructiveInfsup constructive_infsup_check(const FormSet& f, const Vector& eta,
                                             const std::function<double(const Point&)>& mu_in) {
  const SpaceSet& s = *f.spaces;
  const int nv = f.size(Field::V), npi = f.size(Field::Pi);
  if (eta.size() != npi) throw SpaceError("eta must be a fluid-pressure coefficient vector");
  const int d = s.dim();
  const auto mu = mu_in ? mu_in : [d](const Point& x) { return default_cutoff(x, d); };
  ConstructiveInfsup out;
  out.omega = Vector::Zero(nv);

  // Interface profile mu_h e_d on the interface dofs, and its flux.
  const ScalarSpace& vs = s.scalar(Field::V);
  const auto on_gamma = interface_dof_mask(s, Field::V);
  Vector profile = Vector::Zero(nv);
  for (int i = 0; i < vs.num_free(); ++i)
    if (on_gamma[(d - 1) * vs.num_free() + i])
      profile[(d - 1) * vs.num_free() + i] = mu(vs.raw_coordinate(vs.raw_of_free(i)));
  const Vector ones = Vector::Ones(npi);
  const double mu_mean = -ones.dot(f.divergence * profile);
  if (std::abs(mu_mean) < 1e-10) throw ParameterError("cutoff mu has (near) zero mean on the interface");
  if (eta.norm() == 0.0) return out;
  const double c = -ones.dot(f.mass_pi * eta) / mu_mean;
  const Vector boundary = c * profile;

  // min |grad omega|^2 subject to B omega = M_pi eta with the interface values
  // fixed; one multiplier is pinned since constants are compatible by construction.
  std::vector<int> inner;
  std::vector<int> pos(nv, -1);
  for (int i = 0; i < nv; ++i)
    if (!on_gamma[i]) {
      pos[i] = static_cast<int>(inner.size());
      inner.push_back(i);
    }
  const int ni = static_cast<int>(inner.size());
  const int nl = npi - 1;
  const SparseMatrix& g = f.gradient_v;
  const SparseMatrix& b = f.divergence;
  Vector rhs = Vector::Zero(ni + nl);
  const Vector g_bd = g * boundary;
  const Vector b_bd = f.mass_pi * eta - b * boundary;
  std::vector<Triplet> t;
  for (int r = 0; r < nv; ++r) {
    if (pos[r] < 0) continue;
    rhs[pos[r]] = -g_bd[r];
    for (SparseMatrix::InnerIterator it(g, r); it; ++it)
      if (pos[it.col()] >= 0) t.emplace_back(pos[r], pos[it.col()], it.value());
  }
  for (int r = 1; r < npi; ++r) {
    rhs[ni + r - 1] = b_bd[r];
    for (SparseMatrix::InnerIterator it(b, r); it; ++it)
      if (pos[it.col()] >= 0) {
        t.emplace_back(ni + r - 1, pos[it.col()], it.value());
        t.emplace_back(pos[it.col()], ni + r - 1, it.value());
      }
  }
  Eigen::SparseMatrix<double> k(ni + nl, ni + nl);
  k.setFromTriplets(t.begin(), t.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(k);
  if (lu.info() != Eigen::Success) throw SolverError("constructive inf-sup system is singular");
  const Vector x = lu.solve(rhs);
  out.omega = boundary;
  for (int i = 0; i < ni; ++i) out.omega[inner[i]] = x[i];
  const double h1 = std::hypot(norm(s, Field::V, NormKind::H1semi, out.omega), norm(s, Field::V, NormKind::L2, out.omega));
  out.ratio = h1 / norm(s, Field::Pi, NormKind::L2, eta);
  out.div_defect = divergence_defect(s, out.omega, eta);
  return out;
}

double weakform_residual(const FormSet& f, const InterfaceSet& is, const Trajectory& traj, const WeakTest& test,
                         const SourceFunction& sources) {
  const SpaceSet& s = *f.spaces;
  if (traj.states.empty() || traj.states.size() != traj.energy.size())
    throw ParameterError("weak-form residual needs a trajectory with every step stored");
  if (!(test.T > 0.0) || test.T > traj.states.back().time + 1e-12)
    throw ParameterError("test function support must end within the trajectory");
  auto interp = [&](Field fl, const FieldFunction& fn) {
    return fn ? interpolate_field(s, fl, fn) : Vector(Vector::Zero(s.size(fl)));
  };
  const Vector xi = interp(Field::U, test.xi);
  const Vector q = interp(Field::P, test.q);
  const Vector zeta = project_divergence_free(f, interp(Field::V, test.zeta));
  if (xi.norm() + q.norm() + zeta.norm() == 0.0) return 0.0;

  // Row vectors of the pairings, so each term is a dot product with the state.
  const Vector xi_mb = f.mass_b * xi, xi_el = f.elastic * xi, xi_ss = is.s_ww * xi;
  const Vector xi_cp = f.coupling_u.transpose() * xi + is.pn_u.transpose() * xi;
  const Vector xi_sv = is.s_wv.transpose() * xi;
  const Vector q_c0 = f.mass_c0 * q;
  const Vector q_cu = f.coupling_p.transpose() * q + is.pq_u.transpose() * q;
  const Vector q_d = f.diffusion * q, q_v = is.pq_v.transpose() * q;
  const Vector z_mf = f.mass_f * zeta, z_visc = f.viscous * zeta + is.s_vv.transpose() * zeta;
  const Vector z_sw = is.s_vw.transpose() * zeta, z_p = is.pn_v.transpose() * zeta;

  const double T = test.T;
  auto phi = [T](double t) { return t >= T ? 0.0 : (1 - t / T) * (1 - t / T); };
  auto dphi = [T](double t) { return t >= T ? 0.0 : -2.0 * (1 - t / T) / T; };

  auto integrand = [&](const StateVector& y) {
    const double a = phi(y.time), da = dphi(y.time);
    double g = -da * (xi_mb.dot(y.w) + q_c0.dot(y.p) + q_cu.dot(y.u) + z_mf.dot(y.v) + z_sw.dot(y.u) +
                      xi_ss.dot(y.u));
    g += a * (xi_el.dot(y.u) + xi_cp.dot(y.p) + xi_sv.dot(y.v) + q_d.dot(y.p) + q_v.dot(y.v) +
              z_visc.dot(y.v) + z_p.dot(y.p));
    if (sources) {
      const WeakLoads l = sources(y.time);
      if (l.w.size()) g -= a * xi.dot(l.w);
      if (l.p.size()) g -= a * q.dot(l.p);
      if (l.v.size()) g -= a * zeta.dot(l.v);
    }
    return g;
  };

  double lhs = 0.0;
  double prev = integrand(traj.states.front());
  for (size_t n = 1; n < traj.states.size(); ++n) {
    const double cur = integrand(traj.states[n]);
    lhs += 0.5 * (traj.states[n].time - traj.states[n - 1].time) * (prev + cur);
    prev = cur;
  }
  const StateVector& y0 = traj.states.front();
  const double data = phi(y0.time) * (xi_mb.dot(y0.w) + q_c0.dot(y0.p) + q_cu.dot(y0.u) + z_mf.dot(y0.v) +
                                      z_sw.dot(y0.u) + xi_ss.dot(y0.u));
  return std::abs(lhs - data);
}

}  // namespace poroflux
