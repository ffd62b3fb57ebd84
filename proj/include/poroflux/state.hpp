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

#include "poroflux/spaces.hpp"

namespace poroflux {

/// Coefficients of y = [u, w, p_b, v] and the fluid pressure pi, on free dofs.
struct StateVector {
  Vector u;
  Vector w;
  Vector p;
  Vector v;
  Vector pi;
  double time = 0.0;

  static StateVector zeros(const SpaceSet& spaces, double t = 0.0);

  /// [u; w; p; v], the vector acted on by the X Gram.
  Vector stacked() const;
  void unstack(const Vector& y);

  /// Throws SpaceError on length mismatch or non-finite entries.
  void validate(const SpaceSet& spaces) const;
};

}  // namespace poroflux
