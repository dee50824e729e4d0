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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crane/dynamics.hpp"
#include "crane/fuzzy.hpp"
#include "crane/reference.hpp"
#include "crane/smc.hpp"

namespace crane::sim {

using dynamics::ControlInput;
using dynamics::CraneParams;
using dynamics::CraneState;

struct FuzzyConfig {
  bool enabled = false;
  fuzzy::FuzzyAxis x = fuzzy::make_uniform_axis(7, 2.0, 0.0, 1.0);
  fuzzy::FuzzyAxis l = fuzzy::make_uniform_axis(7, 2.0, 0.0, 1.0);
};

/// Gaussian measurement noise standard deviations in state order
/// (x, l, theta, x_dot, l_dot, theta_dot). All zero disables noise.
struct SensorNoise {
  std::array<double, 6> std_dev{};
  bool any() const;
};

struct ScenarioConfig {
  CraneParams plant;
  CraneParams nominal;  ///< controller model; friction and disturbances are ignored
  smc::ControllerGains gains;
  FuzzyConfig fuzzy;
  reference::Trajectory trajectory = reference::SetpointTarget{};
  std::optional<reference::ObstacleSpec> obstacle;
  CraneState initial_state;
  double dt_plant = 1e-3;
  double dt_control = 1e-2;
  double t_end = 10.0;
  SensorNoise noise;
  std::uint64_t rng_seed = 0;
  double u_max_x = 0.0;  ///< <= 0 disables the clamp
  double u_max_l = 0.0;
  bool allow_unstable_gains = false;

  /// Structural checks. Throws ConfigError; gain stability is checked by run().
  void validate() const;
  /// Equilibrium used for the gain check: the trajectory's final target at rest.
  CraneState operating_point() const;
};

/// floor(t_end / dt_plant) + 1, robust to the representation error of decimal step sizes.
std::size_t record_count(double t_end, double dt_plant);
/// dt_control / dt_plant; throws ConfigError unless it is a positive integer.
std::size_t control_ratio(double dt_control, double dt_plant);

struct StepRecord {
  CraneState state;
  reference::Reference ref;
  double s_x = 0.0, s_l = 0.0;
  ControlInput u;
  double d_hat_x = 0.0, d_hat_l = 0.0;
  double dist_x = 0.0, dist_l = 0.0;
};

struct Metrics {
  double rms_error_x = 0.0;
  double rms_error_l = 0.0;
  double max_abs_theta = 0.0;
  double settling_time_x = 0.0;
  double control_effort = 0.0;
  double steady_state_error_x = 0.0;
  std::optional<double> min_obstacle_gap;
  double mean_abs_du_x = 0.0;
  double final_d_hat_x = 0.0;
  double final_d_hat_l = 0.0;
  double max_reaching_residual_x = 0.0;
  double max_reaching_residual_l = 0.0;
  std::size_t controller_faults = 0;

  /// name/value pairs in a fixed order; min_obstacle_gap only when present.
  std::vector<std::pair<std::string, double>> entries() const;
};

struct RunLog {
  std::vector<StepRecord> records;
  Metrics metrics;
  fuzzy::FuzzyAxis final_fuzzy_x;
  fuzzy::FuzzyAxis final_fuzzy_l;
  std::vector<std::string> warnings;
};

/// Closed-loop simulation: controller every dt_control on (optionally noisy) measurements,
/// plant RK4 every dt_plant under zero-order hold. Deterministic for a given config.
/// Throws ConfigError for invalid configs and SimulationFault on integration failure,
/// non-finite state, or controller singularities beyond 1% of control updates.
RunLog run(const ScenarioConfig& config);

/// Summary metrics from logged records; exposed for post-processing and tests.
Metrics compute_metrics(const ScenarioConfig& config, const std::vector<StepRecord>& records);

struct PairedMetric {
  std::string name;
  double a = 0.0;
  double b = 0.0;
  double ratio = 1.0;  ///< b / a, 1 when both are zero
};

struct CompareReport {
  RunLog a;
  RunLog b;
  std::vector<PairedMetric> metrics;

  const PairedMetric& metric(const std::string& name) const;
};

double metric_ratio(double a, double b);

/// Runs both configs (concurrently) and pairs their metrics.
CompareReport compare(const ScenarioConfig& config_a, const ScenarioConfig& config_b);

}  // namespace crane::sim
