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

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "poroflux/errors.hpp"
#include "poroflux/manufactured.hpp"
#include "poroflux/resolvent.hpp"

using namespace poroflux;

namespace {

MaterialParams odd_params() {
  MaterialParams m;
  m.rho_b = 1.3;
  m.rho_f = 0.7;
  m.lambda = 2.1;
  m.mu = 0.9;
  m.alpha = 0.8;
  m.c0 = 0.4;
  m.k = 1.7;
  m.nu = 0.6;
  m.beta = 1.9;
  return m;
}

Vector random_vector(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(gen);
  return v;
}

struct Problem {
  std::shared_ptr<const SpaceSet> spaces;
  std::shared_ptr<const FormSet> forms;
  std::shared_ptr<const InterfaceSet> iface;
  Problem(GridSpec g, const MaterialParams& m, ElementFamily pf = ElementFamily::Q1)
      : spaces(build_spaces(g, {pf})),
        forms(std::make_shared<FormSet>(assemble_forms(spaces, m))),
        iface(std::make_shared<InterfaceSet>(assemble_interface(*spaces, m))) {}
  ResolventSystem system(double eps) const { return ResolventSystem(forms, iface, eps); }
};

double rel_diff(const Vector& a, const Vector& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

double state_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  m = std::max(m, rel_diff(a.u, b.u));
  m = std::max(m, rel_diff(a.w, b.w));
  m = std::max(m, rel_diff(a.p, b.p));
  m = std::max(m, rel_diff(a.v, b.v));
  m = std::max(m, rel_diff(a.pi, b.pi));
  return m;
}

StateVector random_state(const SpaceSet& s, unsigned seed) {
  std::mt19937_64 gen(seed);
  StateVector y;
  y.u = random_vector(s.size(Field::U), gen);
  y.w = random_vector(s.size(Field::W), gen);
  y.p = random_vector(s.size(Field::P), gen);
  y.v = random_vector(s.size(Field::V), gen);
  y.pi = random_vector(s.size(Field::Pi), gen);
  return y;
}

}  // namespace

class ResolventOracle : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(ResolventOracle, UnitEpsMatrixMatchesDenseOracle) {
  const auto [dim, porder] = GetParam();
  const MaterialParams m = odd_params();
  const ElementFamily pf = porder == 1 ? ElementFamily::Q1 : ElementFamily::Q2;
  const Problem s(GridSpec{dim, 2, 2, 2}, m, pf);
  const ResolventSystem sys = s.system(1.0);
  const oracle::Problem pr(dim, 2, 2, 2, porder);
  const Eigen::MatrixXd expected = oracle::resolvent_eps1(pr, m);
  const Eigen::MatrixXd got = to_dense(sys.matrix());
  ASSERT_EQ(got.rows(), expected.rows());
  EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(DimsAndPressureOrders, ResolventOracle,
                         ::testing::Values(std::make_tuple(2, 1), std::make_tuple(2, 2), std::make_tuple(3, 1)));

TEST(Resolvent, ZeroDataGivesZeroState) {
  const Problem s(GridSpec{2, 3, 2, 2}, odd_params());
  const auto [y, rep] = s.system(2.0).solve(ResolventData{});
  EXPECT_EQ(y.u.norm() + y.w.norm() + y.p.norm() + y.v.norm() + y.pi.norm(), 0.0);
  EXPECT_EQ(rep.algebraic_residual, 0.0);
}

TEST(Resolvent, RoundTripRecoversPrescribedState) {
  const Problem s(GridSpec{2, 4, 3, 3}, odd_params());
  for (double eps : {0.05, 1.0, 20.0}) {
    const ResolventSystem sys = s.system(eps);
    const StateVector ys = random_state(*s.spaces, 7);
    const Vector f1 = eps * ys.u - ys.w;
    double res = 1.0;
    const StateVector y = sys.solve_loads(sys.loads_for(ys), f1, &res);
    EXPECT_LT(res, 1e-10);
    EXPECT_LT(state_diff(y, ys), 1e-9) << "eps = " << eps;
  }
}

TEST(Resolvent, RoundTripInThreeDimensions) {
  const Problem s(GridSpec{3, 2, 2, 2}, odd_params());
  const ResolventSystem sys = s.system(0.7);
  const StateVector ys = random_state(*s.spaces, 11);
  const StateVector y = sys.solve_loads(sys.loads_for(ys), 0.7 * ys.u - ys.w);
  EXPECT_LT(state_diff(y, ys), 1e-9);
}

TEST(Resolvent, SparseSolveAgreesWithDenseLU) {
  const Problem s(GridSpec{2, 3, 2, 3}, odd_params());
  const ResolventSystem sys = s.system(3.0);
  std::mt19937_64 gen(3);
  ResolventData d;
  d.f1 = random_vector(s.spaces->size(Field::U), gen);
  d.f2 = random_vector(s.spaces->size(Field::U), gen);
  d.f3 = random_vector(s.spaces->size(Field::P), gen);
  d.f4 = random_vector(s.spaces->size(Field::V), gen);
  const auto [y, rep] = sys.solve(d);
  // Dense solve of the same scaled system.
  const WeakLoads l = sys.loads(d);
  const FormSet& f = sys.forms();
  const InterfaceSet& is = sys.interface();
  const double e = sys.eps();
  const int n = sys.matrix().rows();
  Vector rhs(n);
  rhs << l.w + e * (f.mass_b * d.f1) + is.s_ww * d.f1, (l.p + (f.coupling_p + is.pq_u) * d.f1) / e,
      (l.v + is.s_vw * d.f1) / e, l.pi / e;
  const Vector x = to_dense(sys.matrix()).partialPivLu().solve(rhs);
  EXPECT_LT(rel_diff(y.u, x.head(y.u.size())), 1e-10);
  EXPECT_LT(rel_diff(y.pi, x.tail(y.pi.size())), 1e-10);
  EXPECT_LT(rel_diff(y.w, e * y.u - d.f1), 1e-14);
}

TEST(Resolvent, SolutionIsLinearInTheData) {
  const Problem s(GridSpec{2, 3, 2, 2}, odd_params());
  const ResolventSystem sys = s.system(1.5);
  std::mt19937_64 gen(5);
  ResolventData a, b, c;
  a.f2 = random_vector(s.spaces->size(Field::U), gen);
  a.f4 = random_vector(s.spaces->size(Field::V), gen);
  b.f1 = random_vector(s.spaces->size(Field::U), gen);
  b.f3 = random_vector(s.spaces->size(Field::P), gen);
  c.f1 = -2.0 * b.f1;
  c.f2 = 3.0 * a.f2;
  c.f3 = -2.0 * b.f3;
  c.f4 = 3.0 * a.f4;
  const StateVector ya = sys.solve(a).first, yb = sys.solve(b).first, yc = sys.solve(c).first;
  EXPECT_LT(rel_diff(yc.u, 3.0 * ya.u - 2.0 * yb.u), 1e-10);
  EXPECT_LT(rel_diff(yc.p, 3.0 * ya.p - 2.0 * yb.p), 1e-10);
  EXPECT_LT(rel_diff(yc.v, 3.0 * ya.v - 2.0 * yb.v), 1e-10);
  EXPECT_LT(rel_diff(yc.pi, 3.0 * ya.pi - 2.0 * yb.pi), 1e-10);
}

TEST(Resolvent, VelocityIsEpsTimesDisplacementWithoutF1) {
  const Problem s(GridSpec{2, 3, 2, 2}, odd_params());
  const ResolventSystem sys = s.system(4.0);
  std::mt19937_64 gen(9);
  ResolventData d;
  d.f2 = random_vector(s.spaces->size(Field::U), gen);
  const StateVector y = sys.solve(d).first;
  EXPECT_LT((y.w - 4.0 * y.u).norm(), 1e-14 * std::max(1.0, y.w.norm()));
}

TEST(Resolvent, RejectsInvalidEpsAndLengths) {
  const Problem s(GridSpec{2, 2, 2, 2}, odd_params());
  EXPECT_THROW(s.system(0.0), ParameterError);
  EXPECT_THROW(s.system(-1.0), ParameterError);
  EXPECT_THROW(s.system(std::nan("")), ParameterError);
  ResolventData d;
  d.f2 = Vector::Zero(3);
  EXPECT_THROW(s.system(1.0).solve(d), SpaceError);
}

TEST(Resolvent, IncompressibleLimitStaysSolvable) {
  MaterialParams m = odd_params();
  m.c0 = 0.0;
  const Problem s(GridSpec{2, 3, 2, 2}, m);
  const ResolventSystem sys = s.system(1.0);
  const StateVector ys = random_state(*s.spaces, 13);
  const StateVector y = sys.solve_loads(sys.loads_for(ys), ys.u - ys.w);
  EXPECT_LT(state_diff(y, ys), 1e-9);
}

class PolynomialExactness : public ::testing::TestWithParam<std::tuple<int, double>> {};

TEST_P(PolynomialExactness, DiscreteSolutionIsTheInterpolant) {
  const auto [dim, eps] = GetParam();
  const Problem s(dim == 2 ? GridSpec{2, 3, 3, 2} : GridSpec{3, 2, 2, 2}, odd_params());
  const ResolventSystem sys = s.system(eps);
  const ManufacturedSolution sol = polynomial_solution(dim);
  const auto [y, rep] = sys.solve(manufactured_resolvent_data(sys, sol));
  EXPECT_LT(rel_diff(y.u, interpolate_field(*s.spaces, Field::U, exact_field(sol, Field::U))), 1e-10);
  EXPECT_LT(rel_diff(y.w, interpolate_field(*s.spaces, Field::W, exact_field(sol, Field::W, eps))), 1e-10);
  EXPECT_LT(rel_diff(y.p, interpolate_field(*s.spaces, Field::P, exact_field(sol, Field::P))), 1e-10);
  EXPECT_LT(rel_diff(y.v, interpolate_field(*s.spaces, Field::V, exact_field(sol, Field::V))), 1e-10);
  EXPECT_LT(rel_diff(y.pi, interpolate_field(*s.spaces, Field::Pi, exact_field(sol, Field::Pi))), 1e-10);
  EXPECT_LT(rep.kinematic, 1e-9);
  EXPECT_LT(rep.bjs, 1e-9);
  EXPECT_LT(rep.pressure_balance, 1e-9);
  EXPECT_LT(rep.stress_balance, 1e-9);
  EXPECT_LT(rep.momentum + rep.biot_mass + rep.stokes + rep.interface_weak, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(DimsAndEps, PolynomialExactness,
                         ::testing::Values(std::make_tuple(2, 1.0), std::make_tuple(2, 0.1),
                                           std::make_tuple(2, 10.0), std::make_tuple(3, 1.0)));

TEST(Resolvent, StrongResidualsDetectAPerturbation) {
  const Problem s(GridSpec{2, 3, 3, 2}, odd_params());
  const ResolventSystem sys = s.system(1.0);
  const ManufacturedSolution sol = polynomial_solution(2);
  const ResolventData data = manufactured_resolvent_data(sys, sol);
  StateVector y = sys.solve(data).first;
  // Shift the fluid velocity's tangential component near the interface.
  const auto mask = interface_dof_mask(*s.spaces, Field::V);
  for (int i = 0; i < s.spaces->fluid_velocity().scalar.num_free(); ++i)
    if (mask[i]) y.v[i] += 0.5;
  const SolveReport rep = sys.verify_strong(y, data);
  EXPECT_GT(rep.bjs, 0.1);
  EXPECT_GT(rep.interface_weak, 1e-3);
  EXPECT_LT(rep.pressure_balance, 1e-9);
}

TEST(Resolvent, TrigonometricErrorsDecreaseUnderRefinement) {
  const MaterialParams m;
  const ManufacturedSolution sol = trigonometric_solution();
  double prev_u = 0, prev_v = 0, prev_kin = 0;
  for (int n : {4, 8}) {
    const Problem s(GridSpec{2, n, n, n}, m);
    const ResolventSystem sys = s.system(1.0);
    const auto [y, rep] = sys.solve(manufactured_resolvent_data(sys, sol));
    const double eu = field_error(*s.spaces, Field::U, y.u, sol, NormKind::L2);
    const double ev = field_error(*s.spaces, Field::V, y.v, sol, NormKind::L2);
    if (n == 8) {
      EXPECT_GT(prev_u / eu, 6.0);
      EXPECT_GT(prev_v / ev, 6.0);
      EXPECT_LT(rep.kinematic, prev_kin);
    }
    prev_u = eu;
    prev_v = ev;
    prev_kin = rep.kinematic;
  }
}

TEST(Resolvent, HarmonicPressureCheck) {
  const MaterialParams m;
  {
    const Problem s(GridSpec{2, 3, 3, 2}, m);
    const ResolventSystem sys = s.system(1.0);
    const ManufacturedSolution sol = polynomial_solution(2);
    const ManufacturedData md = manufactured_data(sol, m, 1.0);
    const StateVector y = sys.solve(manufactured_resolvent_data(sys, sol)).first;
    EXPECT_LT(harmonic_pressure_check(y, sys.forms(), md.forcing_v, md.sources.g_p), 1e-10);
  }
  double prev = 0.0;
  for (int n : {4, 8}) {
    const Problem s(GridSpec{2, n, n, n}, m);
    const ResolventSystem sys = s.system(1.0);
    const ManufacturedSolution sol = trigonometric_solution();
    const ManufacturedData md = manufactured_data(sol, m, 1.0);
    const StateVector y = sys.solve(manufactured_resolvent_data(sys, sol)).first;
    const double mis = harmonic_pressure_check(y, sys.forms(), md.forcing_v, md.sources.g_p);
    if (n == 8) EXPECT_LT(mis, prev);
    prev = mis;
  }
}

TEST(Resolvent, ManufacturedDataOfZeroSolutionVanishes) {
  const MaterialParams m = odd_params();
  const ManufacturedData md = manufactured_data(zero_solution(2), m, 2.0);
  double out[3] = {1, 1, 1};
  const Point x{0.3, -0.2, 0.0};
  md.forcing_u(x, out);
  EXPECT_EQ(out[0], 0.0);
  md.sources.g_sigma(x, out);
  EXPECT_EQ(out[1], 0.0);
}

TEST(Resolvent, TrigonometricSolutionSatisfiesItsConstraints) {
  const ManufacturedSolution sol = trigonometric_solution();
  for (double x : {0.0, 0.13, 0.5, 0.77}) {
    // Dirichlet rows: u and p vanish on top, v on the bottom.
    EXPECT_NEAR(sol.u({x, 1.0, 0}, 0).val, 0.0, 1e-15);
    EXPECT_NEAR(sol.u({x, 1.0, 0}, 1).val, 0.0, 1e-15);
    EXPECT_NEAR(sol.p({x, 1.0, 0}).val, 0.0, 1e-15);
    EXPECT_NEAR(sol.v({x, -1.0, 0}, 0).val, 0.0, 1e-15);
    EXPECT_NEAR(sol.v({x, -1.0, 0}, 1).val, 0.0, 1e-15);
    for (double y : {-0.9, -0.4, -0.1}) {
      const Point pt{x, y, 0};
      EXPECT_NEAR(sol.v(pt, 0).grad[0] + sol.v(pt, 1).grad[1], 0.0, 1e-12);
      const Jet pi = sol.pi(pt);
      EXPECT_NEAR(pi.hess[0][0] + pi.hess[1][1], 0.0, 1e-9);
      // Finite-difference check of the gradient.
      const double h = 1e-6;
      const double fd = (sol.pi({x, y + h, 0}).val - sol.pi({x, y - h, 0}).val) / (2 * h);
      EXPECT_NEAR(pi.grad[1], fd, 1e-6);
    }
  }
}
