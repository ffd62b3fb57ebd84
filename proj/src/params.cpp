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

#include "poroflux/params.hpp"

#include <cmath>
#include <string>

#include "poroflux/errors.hpp"

namespace poroflux {

namespace {

void require_positive(const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ParameterError(std::string(name) + " must be > 0, got " + std::to_string(v));
}

}  // namespace

void MaterialParams::validate() const {
  require_positive("rho_b", rho_b);
  require_positive("rho_f", rho_f);
  require_positive("lambda", lambda);
  require_positive("mu", mu);
  require_positive("alpha", alpha);
  require_positive("k", k);
  require_positive("nu", nu);
  require_positive("beta", beta);
  if (!(c0 >= 0.0) || !std::isfinite(c0))
    throw ParameterError("c0 must satisfy c0 >= 0, got " + std::to_string(c0));
}

}  // namespace poroflux
