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

#include "crane/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crane/errors.hpp"

namespace crane::fuzzy {

namespace {
// relative slack for grid spacings that differ from half_width by round-off
constexpr double kGridSlack = 1e-12;
}  // namespace

void FuzzyAxis::validate() const {
  const std::size_t R = centers.size();
  if (R < 2) throw DomainError("fuzzy axis needs at least 2 rules");
  if (D_hat.size() != R) throw DomainError("fuzzy axis: consequent count differs from rule count");
  double widest = 0.0;
  for (std::size_t r = 1; r < R; ++r) {
    if (!(centers[r] > centers[r - 1])) throw DomainError("fuzzy centers must strictly increase");
    widest = std::max(widest, centers[r] - centers[r - 1]);
  }
  const double scale = std::max(std::abs(centers.front()), std::abs(centers.back()));
  for (std::size_t r = 0; r < R; ++r) {
    if (std::abs(centers[r] + centers[R - 1 - r]) > 1e-12 * scale) {
      throw DomainError("fuzzy centers must be symmetric about 0");
    }
  }
  if (R % 2 == 1 && centers[R / 2] != 0.0) throw DomainError("odd rule count needs a center at 0");
  if (!(half_width >= widest * (1.0 - kGridSlack))) throw DomainError("fuzzy half_width must cover the widest center gap");
  if (!(phi_adapt >= 0.0)) throw DomainError("adaptation rate must be >= 0");
  if (!(d_hat_cap > 0.0)) throw DomainError("d_hat_cap must be > 0");
  for (double d : D_hat) {
    if (!(std::abs(d) <= d_hat_cap)) throw DomainError("initial consequent exceeds d_hat_cap");
  }
}

FuzzyAxis make_uniform_axis(int rules, double half_range, double phi_adapt, double d_hat_cap) {
  if (rules < 2) throw DomainError("fuzzy axis needs at least 2 rules");
  if (!(half_range > 0.0)) throw DomainError("fuzzy grid half range must be > 0");
  FuzzyAxis axis;
  const int R = rules;
  axis.centers.resize(R);
  const double spacing = 2.0 * half_range / (R - 1);
  for (int r = 0; r < R; ++r) {
    // mirrored construction keeps the grid exactly symmetric
    const int k = r - (R - 1) / 2;
    axis.centers[r] = (R % 2 == 1) ? k * spacing : (r - 0.5 * (R - 1)) * spacing;
  }
  axis.half_width = spacing;
  axis.D_hat.assign(R, 0.0);
  axis.phi_adapt = phi_adapt;
  axis.d_hat_cap = d_hat_cap;
  axis.validate();
  return axis;
}

std::vector<double> firing_strengths(const FuzzyAxis& axis, double s) {
  const std::size_t R = axis.centers.size();
  std::vector<double> w(R, 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    const double distance = std::abs(s - axis.centers[r]);
    if (distance >= axis.half_width * (1.0 - kGridSlack)) continue;
    w[r] = 1.0 - distance / axis.half_width;
  }
  if (s <= axis.centers.front()) w.front() = 1.0;
  if (s >= axis.centers.back()) w.back() = 1.0;
  return w;
}

std::vector<double> normalized_strengths(const FuzzyAxis& axis, double s) {
  std::vector<double> psi = firing_strengths(axis, s);
  const double total = std::accumulate(psi.begin(), psi.end(), 0.0);
  for (double& p : psi) p /= total;
  return psi;
}

double infer(const FuzzyAxis& axis, double s) {
  const std::vector<double> psi = normalized_strengths(axis, s);
  const double d = std::inner_product(axis.D_hat.begin(), axis.D_hat.end(), psi.begin(), 0.0);
  return std::clamp(d, -axis.d_hat_cap, axis.d_hat_cap);
}

FuzzyAxis adapt(FuzzyAxis axis, double s, double dt) {
  if (!(dt > 0.0)) throw DomainError("adaptation step dt must be > 0");
  const std::vector<double> psi = normalized_strengths(axis, s);
  const double gain = axis.phi_adapt * s * dt;
  for (std::size_t r = 0; r < psi.size(); ++r) {
    if (psi[r] == 0.0) continue;
    axis.D_hat[r] = std::clamp(axis.D_hat[r] + gain * psi[r], -axis.d_hat_cap, axis.d_hat_cap);
  }
  return axis;
}

}  // namespace crane::fuzzy
