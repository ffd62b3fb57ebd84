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
#include <numbers>
#include <random>

#include "poroflux/analysis.hpp"
#include "poroflux/errors.hpp"

using namespace poroflux;

namespace {

constexpr double kPi = std::numbers::pi;

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

struct Problem {
  std::shared_ptr<const SpaceSet> spaces;
  std::shared_ptr<const FormSet> forms;
  std::shared_ptr<const InterfaceSet> iface;
  Problem(GridSpec g, const MaterialParams& m, const SpaceOptions& o = {})
      : spaces(build_spaces(g, o)),
        forms(std::make_shared<FormSet>(assemble_forms(spaces, m))),
        iface(std::make_shared<InterfaceSet>(assemble_interface(*spaces, m))) {}
};

Vector random_vector(int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(gen);
  return v;
}

InitialData smooth_initial() {
  InitialData d;
  d.u0 = [](const Point& x, double* o) {
    o[0] = std::sin(2 * kPi * x[0]) * (1 - x[1]);
    o[1] = x[1] * (1 - x[1]);
  };
  d.v0 = [](const Point& x, double* o) {
    o[0] = (1 + x[1]) * (1 + x[1]);
    o[1] = 0.0;
  };
  return d;
}

WeakTest smooth_test() {
  WeakTest t;
  t.xi = [](const Point& x, double* o) {
    o[0] = std::cos(2 * kPi * x[0]) * (1 - x[1]);
    o[1] = (1 - x[1]) * x[1];
  };
  t.q = [](const Point& x, double* o) { o[0] = std::sin(2 * kPi * x[0]) * (1 - x[1]); };
  t.zeta = [](const Point& x, double* o) {
    o[0] = (1 + x[1]);
    o[1] = 0.5 * std::sin(2 * kPi * x[0]) * (1 + x[1]);
  };
  t.T = 0.2;
  return t;
}

}  // namespace

TEST(Analysis, EnergyReportOfZeroStateIsZero) {
  const Problem pb(GridSpec{2, 2, 2, 2}, odd_params());
  const EnergyReport r = energy_report(*pb.forms, *pb.iface, StateVector::zeros(*pb.spaces));
  EXPECT_EQ(r.e, 0.0);
  EXPECT_EQ(r.slip_norm, 0.0);
}

TEST(Analysis, FluidContentOfCompatibleStateIsConstant) {
  MaterialParams m = odd_params();
  m.c0 = 0.25;
  const Problem pb(GridSpec{2, 3, 3, 2}, m);
  InitialData d;
  d.d0 = [](const Point&, double* o) { o[0] = 1.0; };
  const StateVector y = initialize_state(*pb.forms, d);
  const Vector fc = fluid_content(*pb.forms, y);
  // u = 0, so the content is c0 p = 1 at every free pressure dof.
  ASSERT_GT(fc.size(), 0);
  for (int i = 0; i < fc.size(); ++i) EXPECT_NEAR(fc[i], 1.0, 1e-12);
}

TEST(Analysis, GeneratorIsDissipativeAndInvertible) {
  for (const GridSpec g : {GridSpec{2, 2, 2, 2}, GridSpec{2, 3, 2, 3}}) {
    const Problem pb(g, odd_params());
    const StabilityReport r = generator_checks(*pb.forms, *pb.iface);
    EXPECT_LE(r.max_symmetric_eigenvalue, 1e-10 * std::max(1.0, r.symmetric_scale));
    EXPECT_GT(r.symmetric_scale, 0.0);
    EXPECT_GT(r.min_singular_value, 1e-8 * r.max_singular_value);
  }
}

TEST(Analysis, GeneratorChecksRejectZeroStorageAndLargeProblems) {
  MaterialParams m = odd_params();
  m.c0 = 0.0;
  const Problem pb(GridSpec{2, 2, 2, 2}, m);
  EXPECT_THROW(generator_checks(*pb.forms, *pb.iface), ParameterError);
  const Problem pb2(GridSpec{2, 2, 2, 2}, odd_params());
  EXPECT_THROW(generator_checks(*pb2.forms, *pb2.iface, 10), ParameterError);
}

TEST(Analysis, ZeroPermeabilityIsRejected) {
  MaterialParams m = odd_params();
  m.k = 0.0;
  EXPECT_THROW(m.validate(), ParameterError);
  EXPECT_THROW(assemble_forms(build_spaces(GridSpec{2, 2, 2, 2}), m), ParameterError);
}

TEST(Analysis, InfsupOneDofHandValue) {
  // G = diag(2, 4), b = [1, 2], m = 0.5: b G^-1 b^T = 1/2 + 1 = 3/2, sigma^2 = 3.
  SparseMatrix b(1, 2), g(2, 2), m(1, 1);
  b.insert(0, 0) = 1.0;
  b.insert(0, 1) = 2.0;
  g.insert(0, 0) = 2.0;
  g.insert(1, 1) = 4.0;
  m.insert(0, 0) = 0.5;
  EXPECT_NEAR(infsup_from_matrices(b, g, m), std::sqrt(3.0), 1e-13);
}

TEST(Analysis, InfsupRejectsInconsistentSizes) {
  SparseMatrix b(1, 2), g(3, 3), m(1, 1);
  EXPECT_THROW(infsup_from_matrices(b, g, m), SpaceError);
}

TEST(Analysis, TaylorHoodInfsupIsMeshIndependent) {
  std::vector<double> beta;
  for (int n : {4, 8}) {
    const Problem pb(GridSpec{2, n, 2, n}, odd_params());
    beta.push_back(infsup_constant(*pb.forms));
  }
  for (double b : beta) EXPECT_GT(b, 0.05);
  EXPECT_LT(std::abs(beta[1] - beta[0]), 0.25 * beta[0]);
}

TEST(Analysis, EqualOrderInfsupDegenerates) {
  SpaceOptions o;
  o.fluid_velocity = ElementFamily::Q1;
  o.allow_unstable = true;
  std::vector<double> beta;
  for (int n : {4, 8, 16}) {
    const Problem pb(GridSpec{2, n, 2, n}, odd_params(), o);
    beta.push_back(infsup_constant(*pb.forms));
  }
  const Problem th(GridSpec{2, 8, 2, 8}, odd_params());
  const double stable = infsup_constant(*th.forms);
  EXPECT_LT(beta[2], 0.5 * beta[0]);
  EXPECT_LT(beta[2], 0.5 * stable);
}

TEST(Analysis, ConstructiveInfsupZeroData) {
  const Problem pb(GridSpec{2, 4, 2, 4}, odd_params());
  const ConstructiveInfsup c = constructive_infsup_check(*pb.forms, Vector::Zero(pb.spaces->size(Field::Pi)));
  EXPECT_EQ(c.omega.norm(), 0.0);
  EXPECT_EQ(c.ratio, 0.0);
}

TEST(Analysis, ConstructiveInfsupConstantDataDefectShrinks) {
  std::vector<double> defect;
  for (int n : {4, 8}) {
    const Problem pb(GridSpec{2, n, 2, n}, odd_params());
    const Vector eta = Vector::Ones(pb.spaces->size(Field::Pi));
    const ConstructiveInfsup c = constructive_infsup_check(*pb.forms, eta);
    EXPECT_TRUE(std::isfinite(c.ratio));
    EXPECT_GT(c.ratio, 0.0);
    // Weak constraint: (q, div omega + eta) = 0 for all discrete q.
    EXPECT_NEAR((pb.forms->divergence * c.omega - pb.forms->mass_pi * eta).norm(), 0.0, 1e-10);
    defect.push_back(c.div_defect);
  }
  EXPECT_LT(defect[1], defect[0]);
}

TEST(Analysis, ConstructiveInfsupRatioBoundedAcrossMeshes) {
  std::vector<double> ratio;
  for (int n : {4, 8}) {
    const Problem pb(GridSpec{2, n, 2, n}, odd_params());
    const auto eta_fn = [](const Point& x, double* o) { o[0] = std::cos(2 * kPi * x[0]) + 0.3 * x[1] + 0.1; };
    const Vector eta = interpolate_field(*pb.spaces, Field::Pi, eta_fn);
    ratio.push_back(constructive_infsup_check(*pb.forms, eta).ratio);
  }
  EXPECT_LT(std::max(ratio[0], ratio[1]) / std::min(ratio[0], ratio[1]), 2.0);
}

TEST(Analysis, ConstructiveInfsupRandomDataSpreadAcrossMeshes) {
  std::vector<double> worst;
  for (int n : {4, 8}) {
    const Problem pb(GridSpec{2, n, 2, n}, odd_params());
    double hi = 0.0;
    for (unsigned seed = 1; seed <= 20; ++seed) {
      const ConstructiveInfsup c =
          constructive_infsup_check(*pb.forms, random_vector(pb.spaces->size(Field::Pi), seed));
      ASSERT_TRUE(std::isfinite(c.ratio));
      hi = std::max(hi, c.ratio);
    }
    worst.push_back(hi);
  }
  EXPECT_LT(std::max(worst[0], worst[1]) / std::min(worst[0], worst[1]), 2.0);
}

TEST(Analysis, ConstructiveInfsupRejectsMeanFreeCutoff) {
  const Problem pb(GridSpec{2, 4, 2, 4}, odd_params());
  const Vector eta = Vector::Ones(pb.spaces->size(Field::Pi));
  EXPECT_THROW(constructive_infsup_check(*pb.forms, eta, [](const Point& x) { return std::cos(2 * kPi * x[0]); }),
               ParameterError);
  EXPECT_THROW(constructive_infsup_check(*pb.forms, Vector::Ones(3)), SpaceError);
}

TEST(Analysis, WeakformResidualZeroCases) {
  const Problem pb(GridSpec{2, 3, 2, 3}, odd_params());
  TransientConfig cfg;
  cfg.dt = 0.05;
  cfg.T = 0.2;
  const Trajectory zero = run_transient(pb.forms, pb.iface, StateVector::zeros(*pb.spaces), cfg);
  EXPECT_EQ(weakform_residual(*pb.forms, *pb.iface, zero, smooth_test()), 0.0);
  const Trajectory moving = run_transient(pb.forms, pb.iface, initialize_state(*pb.forms, smooth_initial()), cfg);
  WeakTest none;
  none.T = 0.2;
  EXPECT_EQ(weakform_residual(*pb.forms, *pb.iface, moving, none), 0.0);
}

TEST(Analysis, WeakformResidualRejectsBadInput) {
  const Problem pb(GridSpec{2, 3, 2, 3}, odd_params());
  TransientConfig cfg;
  cfg.dt = 0.05;
  cfg.T = 0.2;
  cfg.output_stride = 2;
  const Trajectory sparse = run_transient(pb.forms, pb.iface, StateVector::zeros(*pb.spaces), cfg);
  EXPECT_THROW(weakform_residual(*pb.forms, *pb.iface, sparse, smooth_test()), ParameterError);
  cfg.output_stride = 1;
  const Trajectory tr = run_transient(pb.forms, pb.iface, StateVector::zeros(*pb.spaces), cfg);
  WeakTest late = smooth_test();
  late.T = 0.5;
  EXPECT_THROW(weakform_residual(*pb.forms, *pb.iface, tr, late), ParameterError);
}

TEST(Analysis, WeakformResidualShrinksUnderRefinement) {
  std::vector<double> res;
  for (int level = 0; level < 3; ++level) {
    const int n = 4 << level;
    const Problem pb(GridSpec{2, n, 2, n}, odd_params());
    TransientConfig cfg;
    cfg.dt = 0.02 / (1 << level);
    cfg.T = 0.2;
    const StateVector y0 = initialize_state(*pb.forms, smooth_initial());
    res.push_back(weakform_residual(*pb.forms, *pb.iface, run_transient(pb.forms, pb.iface, y0, cfg), smooth_test()));
  }
  EXPECT_LT(res[1], 0.75 * res[0]);
  EXPECT_LT(res[2], 0.75 * res[1]);
}

TEST(Analysis, ZEllipticityIsPositive) {
  const Problem pb(GridSpec{2, 3, 2, 3}, odd_params());
  for (double eps : {0.1, 1.0, 10.0}) {
    const auto sys = assemble_resolvent(pb.forms, pb.iface, eps);
    EXPECT_GT(z_ellipticity_constant(*sys), 0.0) << "eps = " << eps;
  }
  MaterialParams m = odd_params();
  m.c0 = 0.0;
  const Problem pb0(GridSpec{2, 3, 2, 3}, m);
  EXPECT_GT(z_ellipticity_constant(*assemble_resolvent(pb0.forms, pb0.iface, 1.0)), 0.0);
}
