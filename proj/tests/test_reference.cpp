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
#include <vector>

#include <gtest/gtest.h>

#include "crane/errors.hpp"
#include "crane/reference.hpp"
#include "oracles.hpp"

namespace crane::reference {
namespace {

const SemicircleSpec kArc{0.0, 1.5, 1.6, 1.5, 10.0};

TEST(Setpoint, ConstantAndTimeInvariant) {
  const Reference a = setpoint({1.0, 1.5}, 0.0);
  EXPECT_EQ(a.x_d, 1.0);
  EXPECT_EQ(a.l_d, 1.5);
  EXPECT_EQ(a.x_d_dot, 0.0);
  EXPECT_EQ(a.l_d_ddot, 0.0);
  EXPECT_EQ(a.theta_d, 0.0);
  EXPECT_EQ(a, setpoint({1.0, 1.5}, 123.4));
  EXPECT_THROW(setpoint({1.0, 0.0}, 0.0), DomainError);
}

TEST(QuinticProgress, BoundaryConditions) {
  const Progress p0 = quintic_progress(0.0, 4.0);
  const Progress p1 = quintic_progress(4.0, 4.0);
  EXPECT_EQ(p0.sigma, 0.0);
  EXPECT_EQ(p1.sigma, 1.0);
  EXPECT_EQ(p0.sigma_dot, 0.0);
  EXPECT_EQ(p1.sigma_ddot, 0.0);
  EXPECT_DOUBLE_EQ(quintic_progress(2.0, 4.0).sigma, 0.5);
  const Progress near_end = quintic_progress(4.0 - 1e-6, 4.0);
  EXPECT_NEAR(near_end.sigma_dot, 0.0, 1e-10);
  EXPECT_NEAR(near_end.sigma_ddot, 0.0, 1e-5);
}

TEST(Semicircle, Endpoints) {
  const Reference start = semicircle(kArc, 0.0);
  EXPECT_NEAR(start.x_d, 0.0, 1e-15);
  EXPECT_NEAR(start.l_d, 1.5, 1e-15);
  EXPECT_EQ(start.x_d_dot, 0.0);
  EXPECT_EQ(start.l_d_dot, 0.0);
  EXPECT_EQ(start.x_d_ddot, 0.0);
  EXPECT_EQ(start.l_d_ddot, 0.0);
  const Reference end = semicircle(kArc, 10.0);
  EXPECT_EQ(end.x_d, 1.6);
  EXPECT_EQ(end.l_d, 1.5);
  EXPECT_EQ(semicircle(kArc, 50.0), end);
}

TEST(Semicircle, ApexAtHalfDuration) {
  const Reference apex = semicircle(kArc, 5.0);
  EXPECT_NEAR(apex.x_d, 0.8, 1e-12);
  EXPECT_NEAR(apex.l_d, 1.5 - 0.8, 1e-12);
  const SemicircleSpec reversed{1.6, 1.5, 0.0, 1.5, 10.0};
  EXPECT_NEAR(semicircle(reversed, 5.0).l_d, 0.7, 1e-12);
  EXPECT_NEAR(semicircle(reversed, 2.0).x_d, 1.6 - semicircle(kArc, 2.0).x_d, 1e-12);
}

TEST(Semicircle, StaysOnCircle) {
  for (double t = 0.0; t <= 10.0; t += 0.05) {
    const Reference r = semicircle(kArc, t);
    ASSERT_NEAR(std::hypot(r.x_d - 0.8, r.l_d - 1.5), 0.8, 1e-12);
    ASSERT_LE(r.l_d, 1.5 + 1e-15);
  }
}

TEST(Semicircle, AnalyticDerivativesMatchFiniteDifferences) {
  const double h = 1e-4;
  for (double t = 0.05; t < 12.0; t += 0.173) {
    const Reference r = semicircle(kArc, t);
    auto pos_x = [](double s) { return semicircle(kArc, s).x_d; };
    auto pos_l = [](double s) { return semicircle(kArc, s).l_d; };
    auto vel_x = [](double s) { return semicircle(kArc, s).x_d_dot; };
    auto vel_l = [](double s) { return semicircle(kArc, s).l_d_dot; };
    ASSERT_NEAR(testing::central_difference(pos_x, t, h), r.x_d_dot, 1e-7) << t;
    ASSERT_NEAR(testing::central_difference(pos_l, t, h), r.l_d_dot, 1e-7) << t;
    ASSERT_NEAR(testing::central_difference(vel_x, t, h), r.x_d_ddot, 1e-7) << t;
    ASSERT_NEAR(testing::central_difference(vel_l, t, h), r.l_d_ddot, 1e-7) << t;
  }
}

TEST(Semicircle, SecondOrderSmoothAtSplice) {
  const Reference before = semicircle(kArc, 10.0 - 1e-7);
  const Reference after = semicircle(kArc, 10.0 + 1e-7);
  EXPECT_NEAR(before.x_d, after.x_d, 1e-12);
  EXPECT_NEAR(before.l_d, after.l_d, 1e-12);
  EXPECT_NEAR(before.x_d_dot, after.x_d_dot, 1e-12);
  EXPECT_NEAR(before.l_d_dot, after.l_d_dot, 1e-12);
  EXPECT_NEAR(before.x_d_ddot, after.x_d_ddot, 1e-6);
  EXPECT_NEAR(before.l_d_ddot, after.l_d_ddot, 1e-6);
}

TEST(Semicircle, RejectsDegenerateGeometry) {
  EXPECT_THROW(semicircle({1.0, 1.5, 1.0, 1.5, 10.0}, 1.0), DomainError);
  EXPECT_THROW(semicircle({0.0, 1.5, 1.0, 1.6, 10.0}, 1.0), DomainError);
  EXPECT_THROW(semicircle({0.0, 1.5, 1.0, 1.5, 0.0}, 1.0), DomainError);
  EXPECT_THROW(semicircle({0.0, 0.5, 1.0, 0.5, 10.0}, 1.0), DomainError);
}

TEST(Evaluate, DispatchesAndFinalTarget) {
  const Trajectory arc = kArc;
  EXPECT_EQ(evaluate(arc, 3.0), semicircle(kArc, 3.0));
  EXPECT_EQ(final_target(arc), (SetpointTarget{1.6, 1.5}));
  const Trajectory sp = SetpointTarget{0.4, 1.2};
  EXPECT_EQ(evaluate(sp, 3.0), setpoint({0.4, 1.2}, 0.0));
  EXPECT_EQ(final_target(sp), (SetpointTarget{0.4, 1.2}));
}

TEST(LoadPosition, PendulumGeometry) {
  dynamics::CraneState s;
  s.x = 1.0;
  s.l = 2.0;
  s.theta = std::asin(0.6);
  const LoadPoint p = load_position(s);
  EXPECT_NEAR(p.horizontal, 2.2, 1e-12);
  EXPECT_NEAR(p.depth, 1.6, 1e-12);
}

const ObstacleSpec kBox{0.8, 0.6, 0.5, 0.1, 1.6};

TEST(Clearance, PathAboveObstaclePasses) {
  const std::vector<LoadPoint> path{{0.0, 0.5}, {0.8, 0.5}, {1.6, 0.5}};
  const ClearanceReport r = clearance_check(path, kBox);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.min_gap, 0.5, 1e-12);
}

TEST(Clearance, SampleInsideFails) {
  const std::vector<LoadPoint> path{{0.0, 0.5}, {0.8, 1.4}, {1.6, 0.5}};
  const ClearanceReport r = clearance_check(path, kBox);
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.min_gap, 0.0);
  EXPECT_EQ(r.worst_index, 1u);
}

TEST(Clearance, InflationCountsAsContact) {
  // 0.05 above the real top, inside the clearance band
  const std::vector<LoadPoint> path{{0.8, 1.05}};
  EXPECT_FALSE(clearance_check(path, kBox).pass);
}

TEST(Clearance, DesiredArcClearsShippedObstacle) {
  std::vector<LoadPoint> path;
  for (double t = 0.0; t <= 10.0; t += 0.01) {
    const Reference r = semicircle(kArc, t);
    path.push_back({r.x_d, r.l_d});
  }
  const ClearanceReport r = clearance_check(path, kBox);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.min_gap, 0.1);
}

TEST(Clearance, RejectsEmptyPath) {
  EXPECT_THROW(clearance_check(std::vector<LoadPoint>{}, kBox), DomainError);
}

}  // namespace
}  // namespace crane::reference
