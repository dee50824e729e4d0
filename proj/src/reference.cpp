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

#include "crane/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crane/errors.hpp"

namespace crane::reference {

using std::numbers::pi;

void SemicircleSpec::validate() const {
  if (!(duration > 0.0)) throw DomainError("semicircle duration must be > 0");
  if (x_start == x_end) throw DomainError("semicircle needs x_start != x_end");
  if (l_start != l_end) throw DomainError("semicircle needs l_start == l_end");
  if (!(l_start - radius() > 0.0)) {
    throw DomainError("semicircle apex would require cable length <= 0");
  }
}

double SemicircleSpec::radius() const { return 0.5 * std::abs(x_end - x_start); }

Progress quintic_progress(double t, double duration) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= duration) return {1.0, 0.0, 0.0};
  const double tau = t / duration;
  const double tau2 = tau * tau;
  const double tau3 = tau2 * tau;
  return {tau3 * (10.0 - 15.0 * tau + 6.0 * tau2),
          30.0 * tau2 * (1.0 - 2.0 * tau + tau2) / duration,
          60.0 * tau * (1.0 - 3.0 * tau + 2.0 * tau2) / (duration * duration)};
}

Reference setpoint(const SetpointTarget& target, double /*t*/) {
  if (!(target.l > 0.0)) throw DomainError("set-point cable length must be > 0");
  Reference ref;
  ref.x_d = target.x;
  ref.l_d = target.l;
  return ref;
}

Reference semicircle(const SemicircleSpec& spec, double t) {
  spec.validate();
  const double center = 0.5 * (spec.x_start + spec.x_end);
  const double half = spec.x_start - center;  // signed, so the arc runs start -> end
  const double r = spec.radius();
  const auto [sigma, sigma_dot, sigma_ddot] = quintic_progress(t, spec.duration);

  const double phase = pi * sigma;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  const double phase_dot = pi * sigma_dot;
  const double phase_ddot = pi * sigma_ddot;

  Reference ref;
  ref.x_d = center + half * c;
  ref.l_d = spec.l_start - r * s;
  ref.x_d_dot = -half * s * phase_dot;
  ref.l_d_dot = -r * c * phase_dot;
  ref.x_d_ddot = -half * (c * phase_dot * phase_dot + s * phase_ddot);
  ref.l_d_ddot = r * (s * phase_dot * phase_dot - c * phase_ddot);
  if (t >= spec.duration) {
    // exact end point rather than cos(pi) round-off
    ref.x_d = spec.x_end;
    ref.l_d = spec.l_end;
  }
  return ref;
}

Reference evaluate(const Trajectory& trajectory, double t) {
  return std::visit(
      [t](const auto& spec) {
        if constexpr (std::is_same_v<std::decay_t<decltype(spec)>, SetpointTarget>) {
          return setpoint(spec, t);
        } else {
          return semicircle(spec, t);
        }
      },
      trajectory);
}

SetpointTarget final_target(const Trajectory& trajectory) {
  if (const auto* sp = std::get_if<SetpointTarget>(&trajectory)) return *sp;
  const auto& arc = std::get<SemicircleSpec>(trajectory);
  return {arc.x_end, arc.l_end};
}

void ObstacleSpec::validate() const {
  if (!(width > 0.0)) throw DomainError("obstacle width must be > 0");
  if (!(height > 0.0)) throw DomainError("obstacle height must be > 0");
  if (!(top_clearance > 0.0)) throw DomainError("obstacle top_clearance must be > 0");
  if (!(floor_depth > height)) throw DomainError("obstacle must fit between floor and rail");
}

LoadPoint load_position(const dynamics::CraneState& state) {
  return {state.x + state.l * std::sin(state.theta), state.l * std::cos(state.theta)};
}

namespace {

double signed_gap(const LoadPoint& p, double left, double right, double top, double bottom) {
  const double dx = std::max({left - p.horizontal, 0.0, p.horizontal - right});
  const double dz = std::max({top - p.depth, 0.0, p.depth - bottom});
  if (dx > 0.0 || dz > 0.0) return std::hypot(dx, dz);
  const double inside = std::min({p.horizontal - left, right - p.horizontal, p.depth - top,
                                  bottom - p.depth});
  return -inside;
}

}  // namespace

ClearanceReport clearance_check(std::span<const LoadPoint> path, const ObstacleSpec& obstacle) {
  if (path.empty()) throw DomainError("clearance_check needs a nonempty path");
  const double half = 0.5 * obstacle.width + obstacle.top_clearance;
  const double left = obstacle.x_center - half;
  const double right = obstacle.x_center + half;
  const double top = obstacle.floor_depth - obstacle.height - obstacle.top_clearance;
  const double bottom = obstacle.floor_depth;

  ClearanceReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double gap = signed_gap(path[i], left, right, top, bottom);
    if (gap < report.min_gap) {
      report.min_gap = gap;
      report.worst_index = i;
    }
  }
  report.pass = report.min_gap > 0.0;
  return report;
}

}  // namespace crane::reference
