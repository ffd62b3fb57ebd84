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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "poroflux/energy.hpp"
#include "poroflux/resolvent.hpp"

namespace poroflux {

enum class TimeScheme { BackwardEuler, CrankNicolson };
std::string to_string(TimeScheme s);
/// Accepts "be", "backward_euler", "cn", "crank_nicolson"; throws ConfigError otherwise.
TimeScheme parse_scheme(const std::string& s);
inline double theta_of(TimeScheme s) { return s == TimeScheme::BackwardEuler ? 1.0 : 0.5; }

struct TransientConfig {
  double dt = 0.01;
  double T = 0.5;
  TimeScheme scheme = TimeScheme::BackwardEuler;
  int output_stride = 1;
  /// Throws ParameterError unless dt > 0, T >= dt and output_stride >= 1.
  void validate() const;
  int num_steps() const;
};

/// Initial data. Coefficient vectors, when set, take precedence over the
/// functions. Empty entries mean zero, except d0: an empty d0 means the
/// compatible content d0 = alpha div u0.
struct InitialData {
  FieldFunction u0;
  FieldFunction u1;
  FieldFunction d0;
  FieldFunction v0;
  Vector u0_coeffs;
  Vector u1_coeffs;
  Vector v0_coeffs;
};

/// u = u0, w = u1, p_b = (d0 - alpha div u0) / c0 projected onto the pressure
/// space (0 when c0 = 0), v = projection of v0 onto the discretely
/// divergence-free subspace, pi = 0. Throws ParameterError when c0 = 0 and d0
/// differs from alpha div u0 by more than 1e-10 in L2.
StateVector initialize_state(const FormSet& forms, const InitialData& data);

/// L2 projection of v onto {B v = 0}.
Vector project_divergence_free(const FormSet& forms, const Vector& v);

/// Weak source loads on the w, p_b, v and pi rows at time t; empty means zero.
using SourceFunction = std::function<WeakLoads(double t)>;

/// One scheme for a fixed step size; factorizes its resolvent once.
class TimeStepper {
 public:
  TimeStepper(std::shared_ptr<const FormSet> forms, std::shared_ptr<const InterfaceSet> iface,
              const TransientConfig& cfg);

  /// Advances y by one step. pi of the result is the multiplier of the step
  /// (end-point for backward Euler, mid-point for Crank-Nicolson).
  StateVector step(const StateVector& y, const SourceFunction& sources = {}) const;

  const ResolventSystem& system() const { return *system_; }
  const TransientConfig& config() const { return cfg_; }

 private:
  std::shared_ptr<const FormSet> forms_;
  std::shared_ptr<const InterfaceSet> iface_;
  TransientConfig cfg_;
  std::shared_ptr<const ResolventSystem> system_;
};

struct Trajectory {
  std::vector<StateVector> states;    ///< every output_stride-th step, plus the last
  std::vector<EnergyReport> energy;   ///< one row per step, starting at t = 0
};

/// Runs ceil(T / dt) steps from y0. The energy rows carry the defect of the
/// scheme's energy balance: for backward Euler
///   e^{n+1} + |y^{n+1} - y^n|_X^2 / 2 + dt d(y^{n+1}) - e^n - dt <F^{n+1}, y^{n+1}>,
/// for Crank-Nicolson the same with the mid-point state and no increment term.
Trajectory run_transient(std::shared_ptr<const FormSet> forms, std::shared_ptr<const InterfaceSet> iface,
                         const StateVector& y0, const TransientConfig& cfg, const SourceFunction& sources = {});

}  // namespace poroflux
