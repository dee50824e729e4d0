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

#include "crane/smc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crane/errors.hpp"

namespace crane::smc {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string("gain ") + name + " must be > 0 (positivity), got " +
                      std::to_string(value));
  }
}

double sign(double z) { return (z > 0.0) - (z < 0.0); }

enum class SwitchingRegion { AsConfigured, Linear };

double switching_term(double s, double phi, SwitchingLaw law, SwitchingRegion region) {
  if (region == SwitchingRegion::Linear) return s / phi;
  return law == SwitchingLaw::Signum ? sign(s) : saturation(s / phi);
}

ControlTerms build_terms(const CraneState& state, const Reference& ref,
                         const ControllerGains& gains, const Eigen::Vector2d& d_hat,
                         const CraneParams& nominal, SwitchingRegion region) {
  ControlTerms terms;
  terms.A = decoupling_matrix(state, nominal, gains);
  terms.switching = switching_variables(state, ref, gains);
  const TrackingErrors& e = terms.switching.errors;

  const double g = nominal.g;
  const double l = state.l;
  const double th = state.theta;
  const double thd = state.theta_dot;

  // Printed form, including +lambda_x on the x rate error and -lambda_l on the l rate error.
  terms.b(0) = gains.alpha_theta * (2.0 * state.l_dot * thd + g * std::sin(th)) / l + d_hat(0) -
               gains.alpha_x * ref.x_d_ddot - gains.alpha_theta * ref.theta_d_ddot +
               gains.lambda_x * e.x_dot + gains.lambda_theta * e.theta_dot +
               gains.K_x * switching_term(terms.switching.s_x, gains.phi_x, gains.law, region);
  terms.b(1) = gains.alpha_l * (l * thd * thd + g * std::cos(th)) + d_hat(1) -
               gains.alpha_l * ref.l_d_ddot - gains.lambda_l * e.l_dot +
               gains.K_l * switching_term(terms.switching.s_l, gains.phi_l, gains.law, region);
  return terms;
}

}  // namespace

void ControllerGains::validate() const {
  require_positive(alpha_x, "alpha_x");
  require_positive(alpha_l, "alpha_l");
  require_positive(lambda_x, "lambda_x");
  require_positive(lambda_l, "lambda_l");
  require_positive(K_x, "K_x");
  require_positive(K_l, "K_l");
  require_positive(phi_x, "phi_x");
  require_positive(phi_l, "phi_l");
  if (!std::isfinite(alpha_theta) || !std::isfinite(lambda_theta)) {
    throw DomainError("gains alpha_theta and lambda_theta must be finite");
  }
}

TrackingErrors tracking_errors(const CraneState& state, const Reference& ref) {
  return {state.x - ref.x_d,         state.l - ref.l_d,         state.theta - ref.theta_d,
          state.x_dot - ref.x_d_dot, state.l_dot - ref.l_d_dot, state.theta_dot - ref.theta_d_dot};
}

SwitchingState switching_variables(const CraneState& state, const Reference& ref,
                                   const ControllerGains& gains) {
  SwitchingState out;
  out.errors = tracking_errors(state, ref);
  const TrackingErrors& e = out.errors;
  out.s_x = gains.alpha_x * e.x_dot + gains.lambda_x * e.x + gains.alpha_theta * e.theta_dot +
            gains.lambda_theta * e.theta;
  out.s_l = gains.alpha_l * e.l_dot + gains.lambda_l * e.l;
  return out;
}

double saturation(double z) {
  if (std::abs(z) <= 1.0) return z;
  return sign(z);
}

Eigen::Matrix2d decoupling_matrix(const CraneState& state, const CraneParams& nominal,
                                  const ControllerGains& gains, double det_threshold) {
  if (!(state.l > 0.0)) throw DomainError("decoupling matrix needs l > 0");
  const double M = nominal.M;
  const double m = nominal.m;
  const double l = state.l;
  const double s = std::sin(state.theta);
  const double c = std::cos(state.theta);
  const double coupling = gains.alpha_theta * c - gains.alpha_x * l;

  Eigen::Matrix2d A;
  A << -coupling / (M * l), coupling * s / (M * l),
       -gains.alpha_l * s / M, gains.alpha_l * (m * s * s + M) / (M * m);

  const double det = A.determinant();
  if (!(std::abs(det) >= det_threshold)) {
    std::ostringstream msg;
    msg << "decoupling matrix singular: |det| = " << std::abs(det)
        << " (alpha_theta cos(theta) - alpha_x l = " << coupling << ")";
    throw SingularMatrixError(msg.str());
  }
  return A;
}

ControlTerms control_terms(const CraneState& state, const Reference& ref,
                           const ControllerGains& gains, const Eigen::Vector2d& d_hat,
                           const CraneParams& nominal) {
  return build_terms(state, ref, gains, d_hat, nominal, SwitchingRegion::AsConfigured);
}

ControlInput solve_control(const Eigen::Matrix2d& A, const Eigen::Vector2d& b) {
  // Partial pivoting on the first column, then back substitution.
  const bool swap = std::abs(A(1, 0)) > std::abs(A(0, 0));
  const int p = swap ? 1 : 0;
  const int q = 1 - p;
  if (A(p, 0) == 0.0) throw SingularMatrixError("2x2 solve: zero first column");
  const double factor = A(q, 0) / A(p, 0);
  const double pivot2 = A(q, 1) - factor * A(p, 1);
  if (pivot2 == 0.0) throw SingularMatrixError("2x2 solve: zero second pivot");
  const double y1 = (b(q) - factor * b(p)) / pivot2;
  const double y0 = (b(p) - A(p, 1) * y1) / A(p, 0);
  return {-y0, -y1};
}

ControlInput control_law(const CraneState& state, const Reference& ref,
                         const ControllerGains& gains, const Eigen::Vector2d& d_hat,
                         const CraneParams& nominal) {
  const ControlTerms terms = control_terms(state, ref, gains, d_hat, nominal);
  return solve_control(terms.A, terms.b);
}

Eigen::Vector2d surface_rates(const CraneState& state, const Reference& ref,
                              const ControllerGains& gains, const ControlInput& u,
                              const CraneParams& model) {
  const Eigen::Vector3d qdd = dynamics::forward_dynamics(state, u, model);
  const TrackingErrors e = tracking_errors(state, ref);
  return {gains.alpha_x * (qdd(0) - ref.x_d_ddot) + gains.lambda_x * e.x_dot +
              gains.alpha_theta * (qdd(2) - ref.theta_d_ddot) + gains.lambda_theta * e.theta_dot,
          gains.alpha_l * (qdd(1) - ref.l_d_ddot) + gains.lambda_l * e.l_dot};
}

Eigen::Vector2d reaching_residual(const CraneState& state, const Reference& ref,
                                  const ControllerGains& gains, const Eigen::Vector2d& d_hat,
                                  const ControlInput& u, const CraneParams& model) {
  const SwitchingState sw = switching_variables(state, ref, gains);
  const Eigen::Vector2d target{
      -gains.K_x * switching_term(sw.s_x, gains.phi_x, gains.law, SwitchingRegion::AsConfigured) -
          d_hat(0),
      -gains.K_l * switching_term(sw.s_l, gains.phi_l, gains.law, SwitchingRegion::AsConfigured) -
          d_hat(1)};
  return surface_rates(state, ref, gains, u, model) - target;
}

std::string StabilityReport::describe() const {
  std::ostringstream out;
  out.precision(6);
  out << (stable ? "STABLE" : "UNSTABLE") << " (max real part " << max_real_part << ")\n";
  for (const auto& ev : eigenvalues) {
    out << "  " << ev.real() << (ev.imag() < 0.0 ? " - " : " + ") << std::abs(ev.imag()) << "i\n";
  }
  return out.str();
}

StabilityReport validate_surface_stability(const ControllerGains& gains, const CraneParams& nominal,
                                           const CraneState& operating_point) {
  if (operating_point.theta != 0.0 || operating_point.x_dot != 0.0 ||
      operating_point.l_dot != 0.0 || operating_point.theta_dot != 0.0) {
    throw DomainError("stability check needs an equilibrium operating point (rates and swing zero)");
  }
  gains.validate();
  nominal.validate();

  CraneParams model = nominal;
  model.friction_viscous_x = model.friction_viscous_l = 0.0;
  model.disturbance_x = model.disturbance_l = {};
  const Reference ref = reference::setpoint({operating_point.x, operating_point.l}, 0.0);
  const Eigen::Vector2d no_compensation = Eigen::Vector2d::Zero();

  auto closed_loop = [&](const dynamics::Vector6d& y) {
    CraneState s = operating_point;
    s.x = y(0);
    s.l = y(1);
    s.theta = y(2);
    s.x_dot = y(3);
    s.l_dot = y(4);
    s.theta_dot = y(5);
    const ControlTerms terms =
        build_terms(s, ref, gains, no_compensation, model, SwitchingRegion::Linear);
    return dynamics::state_derivative(s, solve_control(terms.A, terms.b), model);
  };

  constexpr double step = 1e-6;
  dynamics::Vector6d y0;
  y0 << operating_point.x, operating_point.l, 0.0, 0.0, 0.0, 0.0;

  StabilityReport report;
  for (int i = 0; i < 6; ++i) {
    dynamics::Vector6d plus = y0;
    dynamics::Vector6d minus = y0;
    plus(i) += step;
    minus(i) -= step;
    report.jacobian.col(i) = (closed_loop(plus) - closed_loop(minus)) / (2.0 * step);
  }

  Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> solver(report.jacobian, false);
  if (solver.info() != Eigen::Success) {
    throw SingularMatrixError("eigenvalue decomposition of the closed-loop Jacobian failed");
  }
  const auto& values = solver.eigenvalues();
  report.eigenvalues.assign(values.data(), values.data() + values.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const auto& a, const auto& b) {
              return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
            });
  report.max_real_part = report.eigenvalues.front().real();
  report.stable = report.max_real_part < 0.0;
  return report;
}

}  // namespace crane::smc
