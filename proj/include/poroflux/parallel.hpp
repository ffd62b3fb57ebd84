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

#pragma once

#include <cstddef>

namespace poroflux {

/// Selects the serial reference path or the OpenMP path of a kernel.
/// Both paths produce bitwise-identical results.
enum class Execution { Serial, Parallel };

/// Thread cap from POROFLUX_THREADS (positive integer); 1 when unset.
/// Throws ConfigError on malformed values.
int configured_threads();

/// Overrides the thread cap for this process (0 restores the environment value).
void set_thread_override(int threads);

/// Runs body(i) for i in [0, n). Iterations must write disjoint outputs.
template <class Body>
void parallel_for(std::ptrdiff_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial || n < 2) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
  const int threads = configured_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace poroflux
