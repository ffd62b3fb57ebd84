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

#include <string>

#include "poroflux/config.hpp"
#include "poroflux/errors.hpp"

using namespace poroflux;

namespace {

const std::string kBase = R"(# comment line
[grid]
dimension = 2
n_lat = 4
n_b = 3
n_f = 5
p_b_element = q2

[materials]
; other comment style
c0 = 0.25
beta = 3

[time]
dt = 0.02
T = 0.1
scheme = crank_nicolson
output_stride = 2

[experiment]
name = decay
seed = 42
initial = smooth
refinements = 2,4,8
write_fields = true
)";

std::string message_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesAllSections) {
  const RunConfig c = parse_config(kBase);
  EXPECT_EQ(c.grid.dimension, 2);
  EXPECT_EQ(c.grid.n_lat, 4);
  EXPECT_EQ(c.grid.n_b, 3);
  EXPECT_EQ(c.grid.n_f, 5);
  EXPECT_EQ(c.p_b, ElementFamily::Q2);
  EXPECT_EQ(c.materials.c0, 0.25);
  EXPECT_EQ(c.materials.beta, 3.0);
  EXPECT_EQ(c.materials.k, 1.0);
  EXPECT_EQ(c.time.dt, 0.02);
  EXPECT_EQ(c.time.T, 0.1);
  EXPECT_EQ(c.time.scheme, TimeScheme::CrankNicolson);
  EXPECT_EQ(c.time.output_stride, 2);
  EXPECT_EQ(c.experiment, Experiment::Decay);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.initial, InitialKind::Smooth);
  EXPECT_EQ(c.refinements, (std::vector<int>{2, 4, 8}));
  EXPECT_TRUE(c.write_fields);
  EXPECT_TRUE(c.write_svg);
}

TEST(Config, ToleratesCrlf) {
  std::string crlf;
  for (char ch : kBase) {
    if (ch == '\n') crlf += '\r';
    crlf += ch;
  }
  const RunConfig a = parse_config(kBase), b = parse_config(crlf);
  EXPECT_EQ(a.grid.n_f, b.grid.n_f);
  EXPECT_EQ(a.time.scheme, b.time.scheme);
  EXPECT_EQ(a.refinements, b.refinements);
}

TEST(Config, UnknownKeyIsNamed) {
  const std::string msg = message_of(kBase + "bogus_key = 1\n");
  EXPECT_NE(msg.find("bogus_key"), std::string::npos) << msg;
  EXPECT_THROW(parse_config(kBase + "bogus_key = 1\n"), ConfigError);
}

TEST(Config, UnknownSectionIsAnError) {
  EXPECT_THROW(parse_config(kBase + "[solver]\ntol = 1\n"), ConfigError);
}

TEST(Config, MissingRequiredSection) {
  const std::string msg = message_of("[grid]\nn_lat = 2\n");
  EXPECT_NE(msg.find("materials"), std::string::npos) << msg;
  EXPECT_THROW(parse_config("[materials]\nc0 = 1\n"), ConfigError);
}

TEST(Config, MalformedValues) {
  EXPECT_THROW(parse_config("[grid]\nn_lat = 2.5\n[materials]\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\n[materials]\nc0 = abc\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\n[materials]\n[time]\nscheme = rk4\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\n[materials]\n[experiment]\nwrite_svg = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\np_b_element = q3\n[materials]\n"), SpaceError);
  EXPECT_THROW(parse_config("[grid]\nn_lat\n[materials]\n"), ConfigError);
}

TEST(Config, NegativeStorageCitesConstraint) {
  const std::string msg = message_of(kBase, {"materials.c0=-1"});
  EXPECT_NE(msg.find("c0 >= 0"), std::string::npos) << msg;
  EXPECT_THROW(parse_config(kBase, {"materials.c0=-1"}), ParameterError);
}

TEST(Config, InvalidSubConfigsAreRejected) {
  EXPECT_THROW(parse_config(kBase, {"grid.n_lat=0"}), GridError);
  EXPECT_THROW(parse_config(kBase, {"time.dt=0"}), ParameterError);
  EXPECT_THROW(parse_config(kBase, {"experiment.eps=-2"}), ParameterError);
  EXPECT_THROW(parse_config(kBase, {"experiment.refinements=4,0"}), ParameterError);
}

TEST(Config, OverridesApplyAfterFile) {
  const RunConfig c = parse_config(kBase, {"grid.n_lat=6", "experiment.name=mms", "time.scheme=be"});
  EXPECT_EQ(c.grid.n_lat, 6);
  EXPECT_EQ(c.experiment, Experiment::Mms);
  EXPECT_EQ(c.time.scheme, TimeScheme::BackwardEuler);
  EXPECT_THROW(parse_config(kBase, {"n_lat=6"}), ConfigError);
  EXPECT_THROW(parse_config(kBase, {"grid.n_lat"}), ConfigError);
  EXPECT_THROW(parse_config(kBase, {"grid.nope=1"}), ConfigError);
}

TEST(Config, DuplicateKeysAreErrors) { EXPECT_THROW(parse_config(kBase + "seed = 3\n"), ConfigError); }

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/poroflux.ini"), ConfigError); }

TEST(Config, NameRoundTrips) {
  for (Experiment e : {Experiment::Resolvent, Experiment::Transient, Experiment::Mms, Experiment::C0Study,
                       Experiment::Infsup, Experiment::Decay})
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  for (InitialKind k : {InitialKind::Zero, InitialKind::Random, InitialKind::Smooth})
    EXPECT_EQ(parse_initial(to_string(k)), k);
  EXPECT_THROW(parse_experiment("bench"), ConfigError);
  EXPECT_THROW(parse_initial("noise"), ConfigError);
}
