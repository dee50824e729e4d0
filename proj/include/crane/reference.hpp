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

#include <cstddef>
#include <span>
#include <variant>

#include "crane/dynamics.hpp"

namespace crane::reference {

/// Desired (x, l, theta) with first and second time derivatives.
struct Reference {
  double x_d = 0.0, l_d = 1.0, theta_d = 0.0;
  double x_d_dot = 0.0, l_d_dot = 0.0, theta_d_dot = 0.0;
  double x_d_ddot = 0.0, l_d_ddot = 0.0, theta_d_ddot = 0.0;

  friend bool operator==(const Reference&, const Reference&) = default;
};

struct SetpointTarget {
  double x = 0.0;
  double l = 1.0;

  friend bool operator==(const SetpointTarget&, const SetpointTarget&) = default;
};

/// Half circle in the (x, l) plane from start to end, hoisting the load over the apex.
struct SemicircleSpec {
  double x_start = 0.0;
  double l_start = 1.5;
  double x_end = 1.6;
  double l_end = 1.5;
  double duration = 10.0;  ///< [s]

  /// Throws DomainError on x_start == x_end, l_start != l_end, duration <= 0,
  /// or an apex at l <= 0.
  void validate() const;
  double radius() const;

  friend bool operator==(const SemicircleSpec&, const SemicircleSpec&) = default;
};

using Trajectory = std::variant<SetpointTarget, SemicircleSpec>;

/// Quintic progress law: sigma(0)=0, sigma(T)=1, zero velocity and acceleration at both ends.
struct Progress {
  double sigma = 0.0;
  double sigma_dot = 0.0;
  double sigma_ddot = 0.0;
};
Progress quintic_progress(double t, double duration);

/// Constant reference. Throws DomainError for target.l <= 0.
Reference setpoint(const SetpointTarget& target, double t);

/// Semicircle reference; holds the end point for t >= duration.
Reference semicircle(const SemicircleSpec& spec, double t);

Reference evaluate(const Trajectory& trajectory, double t);

/// Target (x, l) at the end of the trajectory.
SetpointTarget final_target(const Trajectory& trajectory);

/// Rectangular obstacle standing on the floor; depths are measured downward from the rail.
struct ObstacleSpec {
  double x_center = 0.8;
  double width = 0.6;
  double height = 0.5;
  double top_clearance = 0.1;
  double floor_depth = 1.6;

  void validate() const;

  friend bool operator==(const ObstacleSpec&, const ObstacleSpec&) = default;
};

/// Load position in the rail frame: horizontal = x + l sin(theta), depth = l cos(theta).
struct LoadPoint {
  double horizontal = 0.0;
  double depth = 0.0;
};

LoadPoint load_position(const dynamics::CraneState& state);

struct ClearanceReport {
  bool pass = false;
  double min_gap = 0.0;  ///< signed: distance outside the inflated box, negative penetration inside
  std::size_t worst_index = 0;
};

/// Checks every sample against the obstacle inflated by top_clearance on its top and sides.
/// Throws DomainError on an empty path.
ClearanceReport clearance_check(std::span<const LoadPoint> path, const ObstacleSpec& obstacle);

}  // namespace crane::reference
