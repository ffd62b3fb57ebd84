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

#include <stdexcept>
#include <string>

namespace poroflux {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid specification or corrupt grid topology.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Unsupported element pairing, inadmissible field data, size mismatches.
class SpaceError : public Error {
 public:
  using Error::Error;
};

/// Material parameters or scheme settings outside their admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Singular factorization or a linear solve that misses its residual contract.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration files or command-line overrides.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace poroflux
