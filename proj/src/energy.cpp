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

#include "poroflux/energy.hpp"

#include <cmath>

namespace poroflux {

double x_inner(const FormSet& f, const StateVector& a, const StateVector& b) {
  return a.u.dot(f.elastic * b.u) + a.w.dot(f.mass_b * b.w) + a.p.dot(f.mass_c0 * b.p) + a.v.dot(f.mass_f * b.v);
}

double total_energy(const FormSet& f, const StateVector& y) { return 0.5 * x_inner(f, y, y); }

Dissipation dissipation(const FormSet& f, const InterfaceSet& is, const StateVector& y) {
  Dissipation d;
  d.diffusion = y.p.dot(f.diffusion * y.p);
  d.viscous = y.v.dot(f.viscous * y.v);
  d.slip = y.w.dot(is.s_ww * y.w) + y.w.dot(is.s_wv * y.v) + y.v.dot(is.s_vw * y.w) + y.v.dot(is.s_vv * y.v);
  return d;
}

}  // namespace poroflux
