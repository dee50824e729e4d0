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

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "crane/errors.hpp"
#include "crane/report.hpp"
#include "crane/scenario.hpp"
#include "crane/simulation.hpp"

namespace crane::sim {
namespace {

const std::filesystem::path kScenarios = CRANE_SCENARIO_DIR;

ScenarioConfig scenario(const char* name) { return scenario::load(kScenarios / name); }

ScenarioConfig at_rest_on_target() {
  ScenarioConfig c = scenario("setpoint.ini");
  c.initial_state.x = 1.0;
  c.t_end = 5.0;
  return c;
}

TEST(Run, EquilibriumStartStaysPut) {
  const RunLog log = run(at_rest_on_target());
  double worst = 0.0;
  for (const auto& r : log.records) {
    worst = std::max({worst, std::abs(r.state.x - r.ref.x_d), std::abs(r.state.l - r.ref.l_d),
                      std::abs(r.state.theta)});
  }
  EXPECT_LT(worst, 1e-6);
  EXPECT_EQ(log.metrics.controller_faults, 0u);
}

TEST(Run, RecordCountAndTimeGrid) {
  ScenarioConfig c = at_rest_on_target();
  c.t_end = 0.3;
  const RunLog log = run(c);
  ASSERT_EQ(log.records.size(), 301u);
  EXPECT_EQ(log.records.front().state.t, 0.0);
  EXPECT_NEAR(log.records.back().state.t, 0.3, 1e-12);
  EXPECT_EQ(record_count(20.0, 1e-3), 20001u);
  EXPECT_EQ(record_count(0.1, 0.03), 4u);
}

TEST(Run, ControlHeldBetweenUpdates) {
  ScenarioConfig c = scenario("setpoint.ini");
  c.t_end = 0.5;
  const RunLog log = run(c);
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    if (k % 10 != 0) ASSERT_EQ(log.records[k].u, log.records[k - 1].u) << k;
  }
}

TEST(Run, RejectsNonMultipleControlPeriod) {
  ScenarioConfig c = at_rest_on_target();
  c.dt_control = 0.0025;
  c.dt_plant = 0.001;
  EXPECT_THROW(run(c), ConfigError);
  EXPECT_EQ(control_ratio(0.01, 0.001), 10u);
}

TEST(Run, RejectsUnstableGainsUnlessAllowed) {
  ScenarioConfig c = at_rest_on_target();
  c.gains.lambda_theta = 480.0;
  EXPECT_THROW(run(c), ConfigError);
  c.allow_unstable_gains = true;
  c.t_end = 0.1;
  EXPECT_NO_THROW(run(c));
}

TEST(Run, Deterministic) {
  ScenarioConfig c = scenario("compensation.ini");
  c.t_end = 3.0;
  c.noise.std_dev = {1e-3, 1e-3, 1e-3, 1e-2, 1e-2, 1e-2};
  c.rng_seed = 42;
  EXPECT_EQ(report::telemetry_csv(run(c)), report::telemetry_csv(run(c)));
}

TEST(Run, SeedChangesNoisyRunOnly) {
  ScenarioConfig c = scenario("setpoint.ini");
  c.t_end = 2.0;
  ScenarioConfig d = c;
  d.rng_seed = 7;
  EXPECT_EQ(report::telemetry_csv(run(c)), report::telemetry_csv(run(d)));
  c.noise.std_dev[0] = 1e-3;
  d.noise.std_dev[0] = 1e-3;
  EXPECT_NE(report::telemetry_csv(run(c)), report::telemetry_csv(run(d)));
}

TEST(Run, SingularStepHoldsPreviousCommand) {
  // singular only at the exact start configuration; the zero hold lets the cable move off it
  ScenarioConfig c = at_rest_on_target();
  c.gains.alpha_theta = c.gains.alpha_x * c.initial_state.l;
  c.allow_unstable_gains = true;
  c.t_end = 1.0;
  const RunLog log = run(c);
  EXPECT_EQ(log.metrics.controller_faults, 1u);
  ASSERT_FALSE(log.warnings.empty());
  EXPECT_NE(log.warnings.front().find("holding previous command"), std::string::npos);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(log.records[k].u, ControlInput{});
  EXPECT_NE(log.records[10].u, ControlInput{});
}

TEST(Run, FaultBudgetAborts) {
  ScenarioConfig c = at_rest_on_target();
  c.gains.alpha_l = 1e-9;
  c.allow_unstable_gains = true;
  try {
    run(c);
    FAIL();
  } catch (const SimulationFault& e) {
    // 501 control updates allow 5 faults; the sixth, at t = 0.05 s, aborts
    EXPECT_NEAR(e.time(), 0.05, 1e-12);
  }
}

TEST(Run, SingularOperatingPointIsConfigError) {
  ScenarioConfig c = at_rest_on_target();
  c.gains.alpha_theta = c.gains.alpha_x * c.initial_state.l;
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Run, ZeroAdaptationMatchesDisabledCompensator) {
  ScenarioConfig off = scenario("compensation.ini");
  off.t_end = 3.0;
  off.fuzzy.enabled = false;
  ScenarioConfig zero = off;
  zero.fuzzy.enabled = true;
  zero.fuzzy.x.phi_adapt = 0.0;
  zero.fuzzy.l.phi_adapt = 0.0;
  EXPECT_EQ(report::telemetry_csv(run(off)), report::telemetry_csv(run(zero)));
}

TEST(Run, ConstantConsequentsGiveConstantEstimate) {
  ScenarioConfig c = scenario("setpoint.ini");
  c.t_end = 1.0;
  c.fuzzy.enabled = true;
  c.fuzzy.x.phi_adapt = 0.0;
  c.fuzzy.x.D_hat.assign(c.fuzzy.x.rules(), 12.5);
  for (const auto& r : run(c).records) ASSERT_NEAR(r.d_hat_x, 12.5, 1e-12);
}

TEST(Run, BoundaryLayerIsInvariantAfterEntry) {
  const ScenarioConfig c = scenario("setpoint.ini");
  const RunLog log = run(c);
  bool inside = false;
  double entry = -1.0;
  for (const auto& r : log.records) {
    if (!inside && std::abs(r.s_x) <= c.gains.phi_x) {
      inside = true;
      entry = r.state.t;
    }
    if (inside) ASSERT_LE(std::abs(r.s_x), 1.02 * c.gains.phi_x) << r.state.t;
  }
  EXPECT_GT(entry, 0.0);
  EXPECT_LT(entry, 2.0);
}

TEST(Run, ReachingOutsideBoundaryLayer) {
  const ScenarioConfig c = scenario("setpoint.ini");
  const RunLog log = run(c);
  const double h = c.dt_plant;
  for (std::size_t k = 1; k + 1 < log.records.size(); ++k) {
    const double s = log.records[k].s_x;
    if (std::abs(s) <= c.gains.phi_x) continue;
    const double s_dot = (log.records[k + 1].s_x - log.records[k - 1].s_x) / (2.0 * h);
    ASSERT_LT(s * s_dot, 0.0) << log.records[k].state.t;
  }
}

TEST(Run, StepHalvingConverges) {
  ScenarioConfig coarse = scenario("setpoint.ini");
  ScenarioConfig fine = coarse;
  fine.dt_plant = 5e-4;
  const Metrics a = run(coarse).metrics;
  const Metrics b = run(fine).metrics;
  EXPECT_NEAR(b.rms_error_x / a.rms_error_x, 1.0, 0.01);
  EXPECT_NEAR(b.max_abs_theta / a.max_abs_theta, 1.0, 0.01);
}

TEST(Compare, IdenticalConfigsGiveUnitRatios) {
  ScenarioConfig c = scenario("setpoint.ini");
  c.t_end = 3.0;
  const CompareReport r = compare(c, c);
  ASSERT_FALSE(r.metrics.empty());
  for (const auto& m : r.metrics) EXPECT_EQ(m.ratio, 1.0) << m.name;
  EXPECT_THROW(r.metric("nope"), std::out_of_range);
}

TEST(Compare, CompensatorReducesFrictionOffset) {
  ScenarioConfig fuzzy_on = scenario("compensation.ini");
  ASSERT_GT(fuzzy_on.plant.friction_viscous_x, 0.0);
  ScenarioConfig plain = fuzzy_on;
  plain.fuzzy.enabled = false;
  const CompareReport r = compare(plain, fuzzy_on);
  EXPECT_LT(r.metric("steady_state_error_x").ratio, 1.0);
}

TEST(Compare, SignumChattersMore) {
  ScenarioConfig smooth = scenario("setpoint.ini");
  smooth.t_end = 10.0;
  ScenarioConfig signum = smooth;
  signum.gains.law = smc::SwitchingLaw::Signum;
  const CompareReport r = compare(smooth, signum);
  EXPECT_GT(r.metric("mean_abs_du_x").ratio, 10.0);
}

TEST(Compare, MetricRatioConvention) {
  EXPECT_EQ(metric_ratio(0.0, 0.0), 1.0);
  EXPECT_EQ(metric_ratio(2.0, 1.0), 0.5);
}

TEST(Metrics, ObstacleGapReportedOnlyWithObstacle) {
  ScenarioConfig c = at_rest_on_target();
  c.t_end = 0.1;
  EXPECT_FALSE(run(c).metrics.min_obstacle_gap.has_value());
  c.obstacle = reference::ObstacleSpec{};
  EXPECT_TRUE(run(c).metrics.min_obstacle_gap.has_value());
}

}  // namespace
}  // namespace crane::sim
