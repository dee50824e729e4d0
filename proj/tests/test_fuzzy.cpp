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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "crane/errors.hpp"
#include "crane/fuzzy.hpp"

namespace crane::fuzzy {
namespace {

FuzzyAxis axis(double phi = 0.0) { return make_uniform_axis(7, 20.0, phi, 1000.0); }

TEST(UniformAxis, SymmetricGrid) {
  const FuzzyAxis a = axis();
  ASSERT_EQ(a.rules(), 7u);
  EXPECT_EQ(a.centers[3], 0.0);
  for (std::size_t r = 0; r < 7; ++r) EXPECT_EQ(a.centers[r], -a.centers[6 - r]);
  EXPECT_NEAR(a.centers.back(), 20.0, 1e-12);
  EXPECT_NEAR(a.half_width, 20.0 / 3.0, 1e-12);
}

TEST(UniformAxis, RejectsBadConfigurations) {
  EXPECT_THROW(make_uniform_axis(1, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(make_uniform_axis(7, 0.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(make_uniform_axis(7, 1.0, -1.0, 1.0), DomainError);
  FuzzyAxis a = axis();
  a.half_width *= 0.5;
  EXPECT_THROW(a.validate(), DomainError);
  a = axis();
  a.centers[1] += 0.1;
  EXPECT_THROW(a.validate(), DomainError);
}

TEST(FiringStrengths, ApexAndCrossing) {
  const FuzzyAxis a = axis();
  const std::vector<double> at = firing_strengths(a, a.centers[4]);
  for (std::size_t r = 0; r < 7; ++r) EXPECT_EQ(at[r], r == 4 ? 1.0 : 0.0) << r;
  const std::vector<double> mid = firing_strengths(a, 0.5 * (a.centers[1] + a.centers[2]));
  EXPECT_NEAR(mid[1], 0.5, 1e-12);
  EXPECT_NEAR(mid[2], 0.5, 1e-12);
  EXPECT_EQ(std::accumulate(mid.begin(), mid.end(), 0.0) - mid[1] - mid[2], 0.0);
}

TEST(FiringStrengths, ShoulderBeyondGrid) {
  const FuzzyAxis a = axis();
  const std::vector<double> hi = firing_strengths(a, 1e6);
  const std::vector<double> lo = firing_strengths(a, -55.0);
  for (std::size_t r = 0; r < 7; ++r) {
    EXPECT_EQ(hi[r], r == 6 ? 1.0 : 0.0);
    EXPECT_EQ(lo[r], r == 0 ? 1.0 : 0.0);
  }
}

TEST(NormalizedStrengths, PartitionOfUnity) {
  const FuzzyAxis a = axis();
  for (double s = -40.0; s <= 40.0; s += 0.137) {
    const std::vector<double> psi = normalized_strengths(a, s);
    ASSERT_NEAR(std::accumulate(psi.begin(), psi.end(), 0.0), 1.0, 1e-14);
    for (double p : psi) ASSERT_GE(p, 0.0);
  }
}

TEST(Infer, ConstantAndZeroConsequents) {
  FuzzyAxis a = axis();
  for (double s = -30.0; s <= 30.0; s += 0.5) ASSERT_EQ(infer(a, s), 0.0);
  a.D_hat.assign(7, 42.0);
  for (double s = -30.0; s <= 30.0; s += 0.5) ASSERT_NEAR(infer(a, s), 42.0, 1e-12);
}

TEST(Infer, IdentityConsequentsInterpolate) {
  FuzzyAxis a = axis();
  a.D_hat = a.centers;
  for (double c : a.centers) EXPECT_NEAR(infer(a, c), c, 1e-12);
  for (double s = -19.9; s < 20.0; s += 0.31) ASSERT_NEAR(infer(a, s), s, 1e-12);
}

TEST(Infer, ContinuousInS) {
  FuzzyAxis a = axis();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (double& d : a.D_hat) d = u(rng);
  const double lipschitz = 200.0 / a.half_width;
  for (double s = -30.0; s <= 30.0; s += 0.01) {
    ASSERT_LE(std::abs(infer(a, s + 1e-6) - infer(a, s)), lipschitz * 1e-6 * 1.01);
  }
}

TEST(Infer, OutputClamped) {
  FuzzyAxis a = make_uniform_axis(5, 1.0, 0.0, 10.0);
  a.D_hat.assign(5, 10.0);
  EXPECT_EQ(infer(a, 0.3), 10.0);
}

TEST(Adapt, ZeroSurfaceLeavesConsequents) {
  FuzzyAxis a = axis(10.0);
  a.D_hat = {1, 2, 3, 4, 5, 6, 7};
  EXPECT_EQ(adapt(a, 0.0, 1e-3).D_hat, a.D_hat);
}

TEST(Adapt, EulerAccumulationAtCenter) {
  FuzzyAxis a = axis(10.0);
  const double s = a.centers[5];
  for (int k = 1; k <= 500; ++k) {
    a = adapt(a, s, 0.001);
    ASSERT_NEAR(a.D_hat[5], k * 10.0 * s * 0.001, 1e-9 * k);
  }
  for (std::size_t r = 0; r < 7; ++r) {
    if (r != 5) EXPECT_EQ(a.D_hat[r], 0.0);
  }
}

TEST(Adapt, InactiveRulesUntouched) {
  FuzzyAxis a = axis(5.0);
  a.D_hat = {-3, -2, -1, 0, 1, 2, 3};
  const double s = 0.3 * a.centers[1] + 0.7 * a.centers[2];
  const FuzzyAxis b = adapt(a, s, 0.01);
  const std::vector<double> w = firing_strengths(a, s);
  for (std::size_t r = 0; r < 7; ++r) {
    if (w[r] == 0.0) {
      EXPECT_EQ(b.D_hat[r], a.D_hat[r]) << r;
    } else {
      EXPECT_LT(b.D_hat[r], a.D_hat[r]) << r;
    }
  }
}

TEST(Adapt, ConsequentsClampedToCap) {
  FuzzyAxis a = make_uniform_axis(3, 1.0, 1e6, 2.0);
  a = adapt(a, 1.0, 1.0);
  EXPECT_EQ(a.D_hat.back(), 2.0);
}

TEST(Adapt, DeterministicTrajectory) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-25.0, 25.0);
  std::vector<double> sequence(2000);
  for (double& s : sequence) s = u(rng);
  FuzzyAxis a = axis(5.0), b = axis(5.0);
  for (double s : sequence) {
    a = adapt(a, s, 1e-3);
    b = adapt(b, s, 1e-3);
  }
  EXPECT_EQ(a, b);
}

TEST(Adapt, RejectsNonPositiveStep) { EXPECT_THROW(adapt(axis(), 1.0, 0.0), DomainError); }

}  // namespace
}  // namespace crane::fuzzy
