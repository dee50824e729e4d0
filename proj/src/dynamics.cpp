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

#include "crane/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "crane/errors.hpp"

namespace crane::dynamics {

bool CraneState::finite() const {
  return std::isfinite(x) && std::isfinite(l) && std::isfinite(theta) && std::isfinite(x_dot) &&
         std::isfinite(l_dot) && std::isfinite(theta_dot) && std::isfinite(t);
}

double Disturbance::at(double t) const {
  if (t < onset) return 0.0;
  double value = constant;
  if (amplitude != 0.0) value += amplitude * std::sin(2.0 * std::numbers::pi * frequency * (t - onset));
  return value;
}

void CraneParams::validate() const {
  if (!(M > 0.0)) throw DomainError("trolley mass M must be > 0");
  if (!(m > 0.0)) throw DomainError("container mass m must be > 0");
  if (!(g > 0.0)) throw DomainError("gravity g must be > 0");
  if (!(friction_viscous_x >= 0.0)) throw DomainError("friction_viscous_x must be >= 0");
  if (!(friction_viscous_l >= 0.0)) throw DomainError("friction_viscous_l must be >= 0");
}

ControlInput clamp(const ControlInput& u, double u_max_x, double u_max_l) {
  ControlInput out = u;
  if (u_max_x > 0.0) out.u_x = std::clamp(out.u_x, -u_max_x, u_max_x);
  if (u_max_l > 0.0) out.u_l = std::clamp(out.u_l, -u_max_l, u_max_l);
  return out;
}

Eigen::Matrix3d mass_matrix(const CraneState& state, const CraneParams& params) {
  if (!(state.l > 0.0)) throw DomainError("cable length must be > 0, got " + std::to_string(state.l));
  const double M = params.M;
  const double m = params.m;
  const double l = state.l;
  const double s = std::sin(state.theta);
  const double c = std::cos(state.theta);

  Eigen::Matrix3d A;
  A << M + m, m * s, m * l * c,
       m * s, m, 0.0,
       m * l * c, 0.0, m * l * l;
  return A;
}

Eigen::Vector3d bias_vector(const CraneState& state, const CraneParams& params) {
  const double m = params.m;
  const double g = params.g;
  const double l = state.l;
  const double s = std::sin(state.theta);
  const double c = std::cos(state.theta);
  const double ld = state.l_dot;
  const double td = state.theta_dot;

  return {m * td * (td * l * s - 2.0 * ld * c),
          m * (l * td * td + g * c),
          -m * l * (2.0 * ld * td + g * s)};
}

Eigen::Vector3d generalized_forces(const CraneState& state, const ControlInput& u,
                                   const CraneParams& params) {
  return {u.u_x - params.friction_viscous_x * state.x_dot + params.disturbance_x.at(state.t),
          u.u_l - params.friction_viscous_l * state.l_dot + params.disturbance_l.at(state.t),
          0.0};
}

Eigen::Vector3d solve_3x3(const Eigen::Matrix3d& A, const Eigen::Vector3d& b,
                          double pivot_tolerance) {
  Eigen::Matrix3d a = A;
  Eigen::Vector3d y = b;

  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(a(row, col)) > std::abs(a(pivot, col))) pivot = row;
    }
    if (!(std::abs(a(pivot, col)) >= pivot_tolerance)) {
      throw SingularMatrixError("3x3 solve: pivot " + std::to_string(a(pivot, col)) +
                                " below tolerance in column " + std::to_string(col));
    }
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      std::swap(y(pivot), y(col));
    }
    for (int row = col + 1; row < 3; ++row) {
      const double factor = a(row, col) / a(col, col);
      a.row(row).tail(3 - col) -= factor * a.row(col).tail(3 - col);
      y(row) -= factor * y(col);
    }
  }

  Eigen::Vector3d out;
  for (int row = 2; row >= 0; --row) {
    double acc = y(row);
    for (int k = row + 1; k < 3; ++k) acc -= a(row, k) * out(k);
    out(row) = acc / a(row, row);
  }
  return out;
}

Eigen::Vector3d forward_dynamics(const CraneState& state, const ControlInput& u,
                                 const CraneParams& params) {
  const Eigen::Matrix3d A = mass_matrix(state, params);
  const Eigen::Vector3d rhs = bias_vector(state, params) + generalized_forces(state, u, params);
  return solve_3x3(A, rhs);
}

double mechanical_energy(const CraneState& state, const CraneParams& params) {
  const Eigen::Vector3d qd = state.q_dot();
  const double kinetic = 0.5 * qd.dot(mass_matrix(state, params) * qd);
  return kinetic - params.m * params.g * state.l * std::cos(state.theta);
}

Vector6d state_derivative(const CraneState& state, const ControlInput& u,
                          const CraneParams& params) {
  const Eigen::Vector3d qdd = forward_dynamics(state, u, params);
  Vector6d d;
  d << state.x_dot, state.l_dot, state.theta_dot, qdd;
  return d;
}

namespace detail {

CraneState advance(const CraneState& state, const Vector6d& delta, double dt) {
  CraneState next = state;
  next.x += delta(0);
  next.l += delta(1);
  next.theta += delta(2);
  next.x_dot += delta(3);
  next.l_dot += delta(4);
  next.theta_dot += delta(5);
  next.t += dt;
  return next;
}

void check_step_result(const CraneState& next) {
  if (!next.finite()) {
    throw IntegrationFailure("non-finite state after step ending at t=" + std::to_string(next.t));
  }
  if (!(next.l > 0.0)) {
    throw IntegrationFailure("cable length " + std::to_string(next.l) +
                             " <= 0 after step ending at t=" + std::to_string(next.t));
  }
}

void check_step_size(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("integration step dt must be > 0");
}

void fail_stage(const CraneState& state, const char* reason) {
  throw IntegrationFailure("RK4 stage from t=" + std::to_string(state.t) + " failed: " + reason);
}

}  // namespace detail

CraneState integrate_step(const CraneState& state, const ControlInput& u,
                          const CraneParams& params, double dt) {
  return integrate_step(state, [&u](const CraneState&) { return u; }, params, dt);
}

}  // namespace crane::dynamics
