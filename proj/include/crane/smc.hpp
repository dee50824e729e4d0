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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crane/dynamics.hpp"
#include "crane/reference.hpp"

namespace crane::smc {

using dynamics::ControlInput;
using dynamics::CraneParams;
using dynamics::CraneState;
using reference::Reference;

/// |det A| below this trips the decoupling-matrix singularity guard.
inline constexpr double kSingularityThreshold = 1e-8;

/// Boundary-layer interpolation (smooth law) or the discontinuous sign term
/// kept as a chattering baseline.
enum class SwitchingLaw { BoundaryLayer, Signum };

struct ControllerGains {
  double alpha_x = 1.0, alpha_l = 1.0, alpha_theta = 0.0;
  double lambda_x = 1.0, lambda_l = 1.0, lambda_theta = 0.0;
  double K_x = 1.0, K_l = 1.0;
  double phi_x = 1.0, phi_l = 1.0;
  SwitchingLaw law = SwitchingLaw::BoundaryLayer;

  /// Positivity of alpha_x, alpha_l, lambda_x, lambda_l, K_x, K_l, phi_x, phi_l.
  /// Throws DomainError naming the first offending gain.
  void validate() const;

  friend bool operator==(const ControllerGains&, const ControllerGains&) = default;
};

struct TrackingErrors {
  double x = 0.0, l = 0.0, theta = 0.0;
  double x_dot = 0.0, l_dot = 0.0, theta_dot = 0.0;
};

struct SwitchingState {
  double s_x = 0.0;
  double s_l = 0.0;
  TrackingErrors errors;
};

TrackingErrors tracking_errors(const CraneState& state, const Reference& ref);

/// s_x couples trolley and swing errors; s_l only sees the hoist error.
SwitchingState switching_variables(const CraneState& state, const Reference& ref,
                                   const ControllerGains& gains);

/// Standard saturation: identity on [-1, 1], sign(z) outside.
double saturation(double z);

/// Input matrix mapping u to the switching-variable rates under the nominal model.
/// Throws SingularMatrixError when |det| < det_threshold.
Eigen::Matrix2d decoupling_matrix(const CraneState& state, const CraneParams& nominal,
                                  const ControllerGains& gains,
                                  double det_threshold = kSingularityThreshold);

/// The two halves of u = -A^{-1} b, plus the switching state they were built from.
struct ControlTerms {
  Eigen::Matrix2d A;
  Eigen::Vector2d b;
  SwitchingState switching;
};

ControlTerms control_terms(const CraneState& state, const Reference& ref,
                           const ControllerGains& gains, const Eigen::Vector2d& d_hat,
                           const CraneParams& nominal);

/// u = -A^{-1} b by direct 2x2 elimination. Throws SingularMatrixError on a vanishing pivot.
ControlInput solve_control(const Eigen::Matrix2d& A, const Eigen::Vector2d& b);

/// Smooth sliding mode law with fuzzy compensation d_hat = (d_hat_x, d_hat_l).
ControlInput control_law(const CraneState& state, const Reference& ref,
                         const ControllerGains& gains, const Eigen::Vector2d& d_hat,
                         const CraneParams& nominal);

/// (s_x_dot, s_l_dot) produced by applying u to the plant described by `model`,
/// computed through the full 3x3 dynamics rather than the decoupling matrix.
Eigen::Vector2d surface_rates(const CraneState& state, const Reference& ref,
                              const ControllerGains& gains, const ControlInput& u,
                              const CraneParams& model);

/// surface_rates minus the intended reaching dynamics -K sat(s/phi) - d_hat.
/// Zero when the law realizes its target exactly on `model`.
Eigen::Vector2d reaching_residual(const CraneState& state, const Reference& ref,
                                  const ControllerGains& gains, const Eigen::Vector2d& d_hat,
                                  const ControlInput& u, const CraneParams& model);

struct StabilityReport {
  bool stable = false;
  double max_real_part = 0.0;
  std::vector<std::complex<double>> eigenvalues;
  Eigen::Matrix<double, 6, 6> jacobian;

  std::string describe() const;
};

/// Central-difference linearization (step 1e-6) of the nominal closed loop about an
/// equilibrium with d_hat = 0 and the switching term in its linear region.
/// Stable iff every eigenvalue has a strictly negative real part.
/// Throws DomainError if the operating point has nonzero rates or swing.
StabilityReport validate_surface_stability(const ControllerGains& gains, const CraneParams& nominal,
                                           const CraneState& operating_point);

}  // namespace crane::smc
