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

#include "poroflux/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "poroflux/errors.hpp"

namespace poroflux {

namespace {
std::atomic<int> g_override{0};
}

void set_thread_override(int threads) { g_override.store(threads < 0 ? 0 : threads); }

int configured_threads() {
  if (const int o = g_override.load(); o > 0) return o;
  const char* env = std::getenv("POROFLUX_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096)
    throw ConfigError(std::string("POROFLUX_THREADS must be a positive integer, got '") + env + "'");
  return static_cast<int>(v);
}

}  // namespace poroflux
