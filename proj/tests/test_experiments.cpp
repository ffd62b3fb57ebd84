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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "poroflux/errors.hpp"
#include "poroflux/experiments.hpp"

using namespace poroflux;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.grid = GridSpec{2, 4, 4, 4};
  c.time.dt = 0.02;
  c.time.T = 0.2;
  c.seed = 7;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("poroflux_exp_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(InitialState, RandomIsSeededAndAdmissible) {
  const Discretization d = discretize(GridSpec{2, 3, 2, 2}, {}, MaterialParams{});
  const StateVector a = make_initial_state(*d.forms, InitialKind::Random, 5);
  const StateVector b = make_initial_state(*d.forms, InitialKind::Random, 5);
  const StateVector c = make_initial_state(*d.forms, InitialKind::Random, 6);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.p, b.p);
  EXPECT_NE(a.u, c.u);
  EXPECT_GT(a.p.norm(), 0.0);
  EXPECT_LT((d.forms->divergence * a.v).norm(), 1e-10);
  EXPECT_EQ(make_initial_state(*d.forms, InitialKind::Random, 5, true).p.norm(), 0.0);
  MaterialParams m;
  m.c0 = 0.0;
  const Discretization d0 = discretize(GridSpec{2, 3, 2, 2}, {}, m);
  EXPECT_EQ(make_initial_state(*d0.forms, InitialKind::Random, 5).p.norm(), 0.0);
  EXPECT_EQ(make_initial_state(*d0.forms, InitialKind::Zero, 5).u.norm(), 0.0);
  EXPECT_GT(make_initial_state(*d0.forms, InitialKind::Smooth, 5).u.norm(), 0.0);
}

TEST(Mms, PolynomialSolutionIsReproduced) {
  RunConfig c = small_config();
  c.refinements = {2, 4};
  c.p_b = ElementFamily::Q2;
  const MmsStudy st = run_mms_study(c, polynomial_solution(2));
  for (const char* col : {"err_u_L2", "err_p_L2", "err_v_L2"})
    for (double e : st.l2.column(col)) EXPECT_LT(e, 1e-10) << col;
}

TEST(Mms, ZeroSolutionHasZeroErrors) {
  RunConfig c = small_config();
  c.refinements = {2, 4};
  const MmsStudy st = run_mms_study(c, zero_solution(2));
  for (const char* col : {"err_u_L2", "err_p_L2", "err_v_L2"})
    for (double e : st.l2.column(col)) EXPECT_EQ(e, 0.0);
  EXPECT_TRUE(std::isnan(st.l2.column("order_u")[1]));
}

TEST(Mms, HeaderAndOrdersOnTrigonometricSolution) {
  RunConfig c = small_config();
  c.refinements = {4, 8};
  const MmsStudy st = run_mms_study(c);
  EXPECT_EQ(st.l2.header(),
            (std::vector<std::string>{"h", "err_u_L2", "err_p_L2", "err_v_L2", "order_u", "order_p", "order_v"}));
  ASSERT_EQ(st.l2.rows().size(), 2u);
  EXPECT_TRUE(std::isnan(st.l2.rows()[0][4]));
  EXPECT_GT(st.l2.column("order_p")[1], 1.7);
  EXPECT_GT(st.energy.column("order_pi")[1], 1.7);
  EXPECT_THROW(run_mms_study(c, polynomial_solution(3)), ConfigError);
}

TEST(C0Study, ZeroDataGivesZeroColumns) {
  RunConfig c = small_config();
  c.initial = InitialKind::Zero;
  c.c0_levels = 3;
  const CsvTable t = run_c0_study(c);
  ASSERT_EQ(t.rows().size(), 5u);
  for (const auto& r : t.rows()) {
    if (!std::isnan(r[1])) EXPECT_EQ(r[1], 0.0);
    EXPECT_EQ(r[2], 0.0);
    EXPECT_EQ(r[3], 0.0);
  }
}

TEST(C0Study, LimitIsApproachedMonotonically) {
  RunConfig c = small_config();
  c.c0_levels = 6;
  const CsvTable t = run_c0_study(c);
  const auto c0 = t.column("c0");
  const auto next = t.column("diff_next");
  const auto zero = t.column("diff_zero");
  const auto sp = t.column("sup_sqrt_c0_p");
  ASSERT_EQ(c0.size(), 8u);
  EXPECT_EQ(c0.back(), 0.0);
  EXPECT_EQ(sp.back(), 0.0);
  for (size_t i = 1; i + 1 < c0.size(); ++i) EXPECT_LT(sp[i], sp[i - 1]);
  for (size_t i = 1; i + 2 < c0.size(); ++i) EXPECT_LT(next[i], next[i - 1]);
  EXPECT_TRUE(std::isnan(next[c0.size() - 2]));
  // Geometric extrapolation of the halving differences bounds the distance to c0 = 0.
  const size_t L = c0.size() - 2;
  const double q = next[L - 1] / next[L - 2];
  ASSERT_LT(q, 1.0);
  EXPECT_LT(zero[L], 1.5 * next[L - 1] * q / (1 - q));
  EXPECT_EQ(zero.back(), 0.0);
}

TEST(Decay, ZeroDataGivesZeroColumns) {
  RunConfig c = small_config();
  c.initial = InitialKind::Zero;
  const TransientRun run = run_decay_study(c);
  EXPECT_EQ(run.table.rows().size(), 11u);
  for (const auto& r : run.table.rows())
    for (size_t j = 1; j < r.size(); ++j) EXPECT_EQ(r[j], 0.0);
}

TEST(Decay, RandomDataIsMonotone) {
  RunConfig c = small_config();
  c.time.dt = 0.005;
  c.time.T = 0.5;
  const TransientRun run = run_decay_study(c);
  const auto e = run.table.column("e");
  const auto res = run.table.column("identity_residual");
  ASSERT_EQ(e.size(), 101u);
  for (size_t i = 1; i < e.size(); ++i) {
    EXPECT_LE(e[i], e[i - 1]);
    EXPECT_LE(std::abs(res[i]), 1e-10 * std::max(e[0], 1.0));
  }
}

TEST(Decay, LargerSlipCoefficientRaisesSlipShare) {
  RunConfig c = small_config();
  auto share = [&](double beta) {
    c.materials.beta = beta;
    const TransientRun run = run_decay_study(c);
    return run.table.column("slip_cum").back() / run.table.column("d_cum").back();
  };
  const double low = share(0.1);
  EXPECT_GT(share(1.0), low);
}

TEST(Transient, RowsFollowStride) {
  RunConfig c = small_config();
  c.time.output_stride = 3;
  const TransientRun run = run_transient_experiment(c);
  const auto step = run.table.column("step");
  EXPECT_EQ(step, (std::vector<double>{0, 3, 6, 9, 10}));
  EXPECT_EQ(run.trajectory.energy.size(), 11u);
}

TEST(Resolvent, InterfaceResidualsDecrease) {
  RunConfig c = small_config();
  c.refinements = {4, 8, 16};
  const ResolventStudy st = run_resolvent_study(c);
  for (const char* col : {"kinematic", "bjs", "pressure_balance", "stress_balance"}) {
    const auto r = st.table.column(col);
    EXPECT_LT(r[1], r[0]) << col;
    EXPECT_LT(r[2], r[1]) << col;
  }
  for (double a : st.table.column("algebraic_residual")) EXPECT_LT(a, 1e-10);
}

TEST(Infsup, StudyColumns) {
  RunConfig c = small_config();
  c.grid = GridSpec{2, 2, 2, 2};
  c.refinements = {2, 4};
  c.samples = 3;
  const InfsupStudy st = run_infsup_study(c);
  const auto th = st.table.column("beta_taylor_hood");
  const auto q1 = st.table.column("beta_q1q1");
  EXPECT_GT(th[1], 0.05);
  EXPECT_LT(q1[1], q1[0]);
  const auto& s = st.stability.rows().at(0);
  EXPECT_GT(s[1], 0.0);
  EXPECT_GT(s[2], 0.0);
  EXPECT_LE(s[3], 1e-10 * s[4]);
  EXPECT_GT(s[5], 0.0);
}

TEST(Infsup, DenseChecksSkippedAboveLimit) {
  RunConfig c = small_config();
  c.grid = GridSpec{2, 2, 2, 2};
  c.refinements = {2};
  c.samples = 1;
  c.max_dofs = 10;
  const InfsupStudy st = run_infsup_study(c);
  EXPECT_TRUE(std::isnan(st.stability.rows()[0][2]));
  EXPECT_TRUE(std::isnan(st.stability.rows()[0][3]));
}

TEST(RunExperiment, WritesOutputsAndIsDeterministic) {
  for (Experiment e : {Experiment::Transient, Experiment::Decay, Experiment::C0Study, Experiment::Mms,
                       Experiment::Resolvent, Experiment::Infsup}) {
    RunConfig c = small_config();
    c.grid = GridSpec{2, 2, 2, 2};
    c.experiment = e;
    c.refinements = {2, 4};
    c.c0_levels = 2;
    c.samples = 2;
    c.write_fields = true;
    const fs::path a = scratch(to_string(e) + "_a"), b = scratch(to_string(e) + "_b");
    c.output_dir = a.string();
    const auto files = run_experiment(c);
    c.output_dir = b.string();
    run_experiment(c);
    ASSERT_FALSE(files.empty());
    EXPECT_EQ(fs::path(files.front()).filename(), "run.csv");
    for (const std::string& f : files) {
      const fs::path name = fs::path(f).filename();
      EXPECT_EQ(slurp(a / name), slurp(b / name)) << to_string(e) << " " << name;
    }
    const std::string csv = slurp(a / "run.csv");
    EXPECT_EQ(csv.rfind("# poroflux-csv v1 " + to_string(e), 0), 0u) << csv.substr(0, 40);
    if (e == Experiment::Transient || e == Experiment::Decay) {
      EXPECT_TRUE(fs::exists(a / "energy.svg"));
      EXPECT_TRUE(fs::exists(a / "fields_0000.vtk"));
    }
  }
}
