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

#include "crane/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "crane/errors.hpp"

namespace crane::sim {

namespace {

// Fraction of control updates allowed to hit the singularity guard before a run aborts.
constexpr double kFaultBudget = 0.01;
// Share of the run (from the end) averaged into steady_state_error_x.
constexpr double kSteadyStateWindow = 0.05;
// Tolerance for the 2% settling band.
constexpr double kSettlingBand = 0.02;

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

CraneState measure(const CraneState& truth, const SensorNoise& noise, std::mt19937_64& rng) {
  if (!noise.any()) return truth;
  std::normal_distribution<double> unit(0.0, 1.0);
  std::array<double, 6> n{};
  for (double& v : n) v = unit(rng);
  CraneState out = truth;
  out.x += noise.std_dev[0] * n[0];
  out.l += noise.std_dev[1] * n[1];
  out.theta += noise.std_dev[2] * n[2];
  out.x_dot += noise.std_dev[3] * n[3];
  out.l_dot += noise.std_dev[4] * n[4];
  out.theta_dot += noise.std_dev[5] * n[5];
  return out;
}

std::string format_time(double t) {
  std::ostringstream out;
  out << t;
  return out.str();
}

}  // namespace

bool SensorNoise::any() const {
  return std::any_of(std_dev.begin(), std_dev.end(), [](double s) { return s > 0.0; });
}

void ScenarioConfig::validate() const {
  try {
    plant.validate();
    nominal.validate();
    gains.validate();
    fuzzy.x.validate();
    fuzzy.l.validate();
    if (const auto* arc = std::get_if<reference::SemicircleSpec>(&trajectory)) arc->validate();
    reference::evaluate(trajectory, 0.0);
    if (obstacle) obstacle->validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  require(initial_state.l > 0.0, "initial cable length must be > 0");
  require(initial_state.finite(), "initial state must be finite");
  require(dt_plant > 0.0 && std::isfinite(dt_plant), "dt_plant must be > 0");
  require(t_end > 0.0 && std::isfinite(t_end), "t_end must be > 0");
  control_ratio(dt_control, dt_plant);
  for (double s : noise.std_dev) require(s >= 0.0, "sensor noise standard deviations must be >= 0");
}

CraneState ScenarioConfig::operating_point() const {
  const auto target = reference::final_target(trajectory);
  CraneState op;
  op.x = target.x;
  op.l = target.l;
  return op;
}

std::size_t record_count(double t_end, double dt_plant) {
  const double steps = t_end / dt_plant;
  return static_cast<std::size_t>(std::floor(steps + 1e-9 * std::max(1.0, steps))) + 1;
}

std::size_t control_ratio(double dt_control, double dt_plant) {
  require(dt_control > 0.0 && dt_plant > 0.0, "dt_control and dt_plant must be > 0");
  const double ratio = dt_control / dt_plant;
  const double rounded = std::round(ratio);
  require(rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * rounded,
          "dt_control must be an integer multiple of dt_plant");
  return static_cast<std::size_t>(rounded);
}

std::vector<std::pair<std::string, double>> Metrics::entries() const {
  std::vector<std::pair<std::string, double>> out{
      {"rms_error_x", rms_error_x},
      {"rms_error_l", rms_error_l},
      {"max_abs_theta", max_abs_theta},
      {"settling_time_x", settling_time_x},
      {"control_effort", control_effort},
      {"steady_state_error_x", steady_state_error_x},
  };
  if (min_obstacle_gap) out.emplace_back("min_obstacle_gap", *min_obstacle_gap);
  out.insert(out.end(), {
                            {"mean_abs_du_x", mean_abs_du_x},
                            {"final_d_hat_x", final_d_hat_x},
                            {"final_d_hat_l", final_d_hat_l},
                            {"max_reaching_residual_x", max_reaching_residual_x},
                            {"max_reaching_residual_l", max_reaching_residual_l},
                            {"controller_faults", static_cast<double>(controller_faults)},
                        });
  return out;
}

Metrics compute_metrics(const ScenarioConfig& config, const std::vector<StepRecord>& records) {
  Metrics m;
  if (records.empty()) return m;
  const std::size_t n = records.size();

  double sum_x = 0.0;
  double sum_l = 0.0;
  for (const auto& r : records) {
    const double ex = r.state.x - r.ref.x_d;
    const double el = r.state.l - r.ref.l_d;
    sum_x += ex * ex;
    sum_l += el * el;
    m.max_abs_theta = std::max(m.max_abs_theta, std::abs(r.state.theta));
  }
  m.rms_error_x = std::sqrt(sum_x / n);
  m.rms_error_l = std::sqrt(sum_l / n);

  const double step = std::abs(reference::final_target(config.trajectory).x - config.initial_state.x);
  if (step > 0.0) {
    for (const auto& r : records) {
      if (std::abs(r.state.x - r.ref.x_d) > kSettlingBand * step) m.settling_time_x = r.state.t;
    }
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    m.control_effort += std::hypot(records[k].u.u_x, records[k].u.u_l) * config.dt_plant;
  }

  const std::size_t window =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(kSteadyStateWindow * n)));
  double ss = 0.0;
  for (std::size_t k = n - window; k < n; ++k) ss += std::abs(records[k].state.x - records[k].ref.x_d);
  m.steady_state_error_x = ss / window;

  if (config.obstacle) {
    std::vector<reference::LoadPoint> path;
    path.reserve(n);
    for (const auto& r : records) path.push_back(reference::load_position(r.state));
    m.min_obstacle_gap = reference::clearance_check(path, *config.obstacle).min_gap;
  }

  if (n > 1) {
    double du = 0.0;
    for (std::size_t k = 1; k < n; ++k) du += std::abs(records[k].u.u_x - records[k - 1].u.u_x);
    m.mean_abs_du_x = du / (n - 1);
  }
  m.final_d_hat_x = records.back().d_hat_x;
  m.final_d_hat_l = records.back().d_hat_l;
  return m;
}

RunLog run(const ScenarioConfig& config) {
  config.validate();

  if (!config.allow_unstable_gains) {
    smc::StabilityReport report;
    try {
      report = smc::validate_surface_stability(config.gains, config.nominal, config.operating_point());
    } catch (const SingularMatrixError& e) {
      throw ConfigError(std::string("gain set is singular at the operating point: ") + e.what());
    }
    if (!report.stable) {
      throw ConfigError("gain set fails the surface stability check:\n" + report.describe());
    }
  }

  const std::size_t n = record_count(config.t_end, config.dt_plant);
  const std::size_t ratio = control_ratio(config.dt_control, config.dt_plant);
  const std::size_t control_updates = (n - 1) / ratio + 1;
  const double fault_limit = kFaultBudget * static_cast<double>(control_updates);

  CraneParams model = config.nominal;
  model.friction_viscous_x = model.friction_viscous_l = 0.0;
  model.disturbance_x = model.disturbance_l = {};

  RunLog log;
  log.records.reserve(n);
  log.final_fuzzy_x = config.fuzzy.x;
  log.final_fuzzy_l = config.fuzzy.l;

  std::mt19937_64 rng(config.rng_seed);
  CraneState state = config.initial_state;
  state.t = 0.0;
  ControlInput u_held{};
  Eigen::Vector2d d_hat = Eigen::Vector2d::Zero();
  double residual_x = 0.0;
  double residual_l = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * config.dt_plant;
    state.t = t;
    const reference::Reference ref = reference::evaluate(config.trajectory, t);

    if (k % ratio == 0) {
      const CraneState measured = measure(state, config.noise, rng);
      const smc::SwitchingState sw = smc::switching_variables(measured, ref, config.gains);
      if (config.fuzzy.enabled) {
        d_hat = {fuzzy::infer(log.final_fuzzy_x, sw.s_x), fuzzy::infer(log.final_fuzzy_l, sw.s_l)};
      }
      try {
        const ControlInput raw = smc::control_law(measured, ref, config.gains, d_hat, config.nominal);
        u_held = dynamics::clamp(raw, config.u_max_x, config.u_max_l);
        const Eigen::Vector2d residual =
            smc::reaching_residual(measured, ref, config.gains, d_hat, raw, model);
        residual_x = std::max(residual_x, std::abs(residual(0)));
        residual_l = std::max(residual_l, std::abs(residual(1)));
      } catch (const SingularMatrixError& e) {
        ++log.metrics.controller_faults;
        log.warnings.push_back("t=" + format_time(t) + " s: holding previous command: " + e.what());
        if (static_cast<double>(log.metrics.controller_faults) > fault_limit) {
          throw SimulationFault(t, "controller singularities exceed 1% of control updates");
        }
      }
      if (config.fuzzy.enabled) {
        log.final_fuzzy_x = fuzzy::adapt(std::move(log.final_fuzzy_x), sw.s_x, config.dt_control);
        log.final_fuzzy_l = fuzzy::adapt(std::move(log.final_fuzzy_l), sw.s_l, config.dt_control);
      }
    }

    const smc::SwitchingState truth = smc::switching_variables(state, ref, config.gains);
    StepRecord record;
    record.state = state;
    record.ref = ref;
    record.s_x = truth.s_x;
    record.s_l = truth.s_l;
    record.u = u_held;
    record.d_hat_x = d_hat(0);
    record.d_hat_l = d_hat(1);
    record.dist_x = config.plant.disturbance_x.at(t);
    record.dist_l = config.plant.disturbance_l.at(t);
    log.records.push_back(record);

    if (k + 1 < n) {
      try {
        state = dynamics::integrate_step(state, u_held, config.plant, config.dt_plant);
      } catch (const IntegrationFailure& e) {
        throw SimulationFault(t, e.what());
      } catch (const SingularMatrixError& e) {
        throw SimulationFault(t, e.what());
      }
    }
  }

  log.metrics = [&] {
    Metrics m = compute_metrics(config, log.records);
    m.controller_faults = log.metrics.controller_faults;
    m.max_reaching_residual_x = residual_x;
    m.max_reaching_residual_l = residual_l;
    return m;
  }();

  // The law is built to give s_dot = -K sat(s/phi) - d_hat on the nominal model; report when it
  // does not (the printed rate-error signs make the residual nonzero whenever those errors are).
  const double tolerance = 1e-6;
  if (residual_x > tolerance * config.gains.K_x) {
    log.warnings.push_back("s_x rate departs from -K_x sat(s_x/phi_x) - d_hat_x on the nominal model by up to " +
                           format_time(residual_x));
  }
  if (residual_l > tolerance * config.gains.K_l) {
    log.warnings.push_back("s_l rate departs from -K_l sat(s_l/phi_l) - d_hat_l on the nominal model by up to " +
                           format_time(residual_l));
  }
  return log;
}

double metric_ratio(double a, double b) {
  if (a == 0.0 && b == 0.0) return 1.0;
  return b / a;
}

const PairedMetric& CompareReport::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw std::out_of_range("no metric named " + name);
}

CompareReport compare(const ScenarioConfig& config_a, const ScenarioConfig& config_b) {
  auto future_a = std::async(std::launch::async, [&config_a] { return run(config_a); });
  RunLog b = run(config_b);
  RunLog a = future_a.get();

  CompareReport report;
  const auto entries_a = a.metrics.entries();
  const auto entries_b = b.metrics.entries();
  for (const auto& [name, value_a] : entries_a) {
    const auto it = std::find_if(entries_b.begin(), entries_b.end(),
                                 [&](const auto& e) { return e.first == name; });
    if (it == entries_b.end()) continue;
    report.metrics.push_back({name, value_a, it->second, metric_ratio(value_a, it->second)});
  }
  report.a = std::move(a);
  report.b = std::move(b);
  return report;
}

}  // namespace crane::sim
