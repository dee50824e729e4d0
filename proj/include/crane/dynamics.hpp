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

#include <concepts>
#include <Eigen/Dense>

#include "crane/errors.hpp"

namespace crane::dynamics {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Full plant state: generalized coordinates (x, l, theta), their rates, and time.
struct CraneState {
  double x = 0.0;          ///< trolley position [m]
  double l = 1.0;          ///< cable length [m], strictly positive
  double theta = 0.0;      ///< swing angle [rad]
  double x_dot = 0.0;      ///< [m/s]
  double l_dot = 0.0;      ///< [m/s]
  double theta_dot = 0.0;  ///< [rad/s]
  double t = 0.0;          ///< simulation time [s]

  Eigen::Vector3d q() const { return {x, l, theta}; }
  Eigen::Vector3d q_dot() const { return {x_dot, l_dot, theta_dot}; }
  bool finite() const;

  friend bool operator==(const CraneState&, const CraneState&) = default;
};

/// Time-dependent external force: constant + amplitude * sin(2 pi f (t - onset)), zero before onset.
struct Disturbance {
  double constant = 0.0;   ///< [N]
  double amplitude = 0.0;  ///< [N]
  double frequency = 0.0;  ///< [Hz]
  double onset = 0.0;      ///< [s]

  double at(double t) const;

  friend bool operator==(const Disturbance&, const Disturbance&) = default;
};

/// Physical parameters. Friction and disturbances are only ever applied by the plant;
/// a controller's nominal model keeps them at zero.
struct CraneParams {
  double M = 120.0;  ///< trolley mass [kg]
  double m = 50.0;   ///< container mass [kg]
  double g = 9.81;   ///< [m/s^2]
  double friction_viscous_x = 0.0;  ///< [N s/m]
  double friction_viscous_l = 0.0;  ///< [N s/m]
  Disturbance disturbance_x;
  Disturbance disturbance_l;

  /// Throws DomainError unless M, m, g > 0 and friction coefficients >= 0.
  void validate() const;

  friend bool operator==(const CraneParams&, const CraneParams&) = default;
};

/// Trolley force u_x and cable force u_l [N].
struct ControlInput {
  double u_x = 0.0;
  double u_l = 0.0;

  friend bool operator==(const ControlInput&, const ControlInput&) = default;
};

/// Symmetric per-channel clamp. A limit <= 0 disables clamping on that channel.
ControlInput clamp(const ControlInput& u, double u_max_x, double u_max_l);

/// Mass matrix in row order (x, l, theta). Throws DomainError for l <= 0.
Eigen::Matrix3d mass_matrix(const CraneState& state, const CraneParams& params);

/// Coriolis, centrifugal and gravity terms on the right-hand side of the equation of motion.
Eigen::Vector3d bias_vector(const CraneState& state, const CraneParams& params);

/// Actuation plus plant-only terms: [u_x - c_x x_dot + d_x(t), u_l - c_l l_dot + d_l(t), 0].
/// The swing coordinate is never actuated.
Eigen::Vector3d generalized_forces(const CraneState& state, const ControlInput& u,
                                   const CraneParams& params);

/// Solves A y = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError if a pivot magnitude falls below `pivot_tolerance`.
Eigen::Vector3d solve_3x3(const Eigen::Matrix3d& A, const Eigen::Vector3d& b,
                          double pivot_tolerance = 1e-12);

/// Accelerations (x_ddot, l_ddot, theta_ddot).
Eigen::Vector3d forward_dynamics(const CraneState& state, const ControlInput& u,
                                 const CraneParams& params);

/// 1/2 q_dot^T M(q) q_dot - m g l cos(theta).
double mechanical_energy(const CraneState& state, const CraneParams& params);

/// Time derivative of the first-order state [q, q_dot].
Vector6d state_derivative(const CraneState& state, const ControlInput& u,
                          const CraneParams& params);

/// Anything that maps a (stage) state to a control input.
template <class F>
concept ControlPolicy = requires(const F& f, const CraneState& s) {
  { f(s) } -> std::convertible_to<ControlInput>;
};

namespace detail {
CraneState advance(const CraneState& state, const Vector6d& delta, double dt);
void check_step_result(const CraneState& next);
void check_step_size(double dt);
[[noreturn]] void fail_stage(const CraneState& state, const char* reason);
}  // namespace detail

/// One classical RK4 step where the control is re-evaluated at every stage.
template <ControlPolicy Policy>
CraneState integrate_step(const CraneState& state, const Policy& policy,
                          const CraneParams& params, double dt) {
  detail::check_step_size(dt);
  const double half = 0.5 * dt;
  Vector6d delta;
  try {
    const Vector6d k1 = state_derivative(state, policy(state), params);
    const CraneState s2 = detail::advance(state, half * k1, half);
    const Vector6d k2 = state_derivative(s2, policy(s2), params);
    const CraneState s3 = detail::advance(state, half * k2, half);
    const Vector6d k3 = state_derivative(s3, policy(s3), params);
    const CraneState s4 = detail::advance(state, dt * k3, dt);
    const Vector6d k4 = state_derivative(s4, policy(s4), params);
    delta = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  } catch (const DomainError& e) {
    // an intermediate stage left the l > 0 domain
    detail::fail_stage(state, e.what());
  }
  CraneState next = detail::advance(state, delta, dt);
  detail::check_step_result(next);
  return next;
}

/// One RK4 step under a zero-order-held control input.
CraneState integrate_step(const CraneState& state, const ControlInput& u,
                          const CraneParams& params, double dt);

}  // namespace crane::dynamics
