// Copyright 2026 The crane-smc Authors
//
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

namespace crane {

/// Input outside the mathematical domain of an operation (l <= 0, dt <= 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear solve hit a pivot (or determinant) below its guard threshold.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The integrator produced a non-physical state (l <= 0 or non-finite values).
class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario file, unknown key, missing key or invalid value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-loop run aborted. Carries the simulation time of the fault.
class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(double time, const std::string& what)
      : std::runtime_error("t=" + std::to_string(time) + " s: " + what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace crane
