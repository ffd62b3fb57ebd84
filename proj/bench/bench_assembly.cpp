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

// Serial reference versus OpenMP assembly of the finite element forms.

#include <benchmark/benchmark.h>

#include <memory>

#include "poroflux/forms.hpp"
#include "poroflux/spaces.hpp"

using namespace poroflux;

namespace {

std::shared_ptr<const SpaceSet> spaces_for(int n) {
  return build_spaces(GridSpec{2, n, n, n}, SpaceOptions{});
}

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_Mass(benchmark::State& state) {
  const auto s = spaces_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mass(*s, Field::U, 1.0, exec_of(state)));
  state.SetLabel(exec_of(state) == Execution::Serial ? "serial" : "parallel");
}

void BM_Elasticity(benchmark::State& state) {
  const auto s = spaces_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::elasticity(*s, Field::U, 1.0, 1.0, exec_of(state)));
  state.SetLabel(exec_of(state) == Execution::Serial ? "serial" : "parallel");
}

void BM_AllForms(benchmark::State& state) {
  const auto s = spaces_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_forms(s, MaterialParams{}, exec_of(state)));
  state.SetLabel(exec_of(state) == Execution::Serial ? "serial" : "parallel");
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {8, 16, 32})
    for (int e : {0, 1}) b->Args({n, e});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Mass)->Apply(sizes);
BENCHMARK(BM_Elasticity)->Apply(sizes);
BENCHMARK(BM_AllForms)->Apply(sizes);

BENCHMARK_MAIN();
