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

#include "poroflux/state.hpp"

#include "poroflux/errors.hpp"

namespace poroflux {

StateVector StateVector::zeros(const SpaceSet& s, double t) {
  StateVector y;
  y.u = Vector::Zero(s.size(Field::U));
  y.w = Vector::Zero(s.size(Field::W));
  y.p = Vector::Zero(s.size(Field::P));
  y.v = Vector::Zero(s.size(Field::V));
  y.pi = Vector::Zero(s.size(Field::Pi));
  y.time = t;
  return y;
}

Vector StateVector::stacked() const {
  Vector y(u.size() + w.size() + p.size() + v.size());
  y << u, w, p, v;
  return y;
}

void StateVector::unstack(const Vector& y) {
  if (y.size() != u.size() + w.size() + p.size() + v.size())
    throw SpaceError("stacked state has wrong length");
  Eigen::Index o = 0;
  u = y.segment(o, u.size());
  o += u.size();
  w = y.segment(o, w.size());
  o += w.size();
  p = y.segment(o, p.size());
  o += p.size();
  v = y.segment(o, v.size());
}

void StateVector::validate(const SpaceSet& s) const {
  const std::pair<const Vector*, Field> parts[] = {
      {&u, Field::U}, {&w, Field::W}, {&p, Field::P}, {&v, Field::V}, {&pi, Field::Pi}};
  for (const auto& [vec, f] : parts) {
    if (vec->size() != s.size(f))
      throw SpaceError("state field " + to_string(f) + " has length " + std::to_string(vec->size()) +
                       ", expected " + std::to_string(s.size(f)));
    if (!vec->allFinite()) throw SpaceError("state field " + to_string(f) + " is not finite");
  }
}

}  // namespace poroflux
