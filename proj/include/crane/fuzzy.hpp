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

#include <vector>

namespace crane::fuzzy {

/// Zero-order TSK compensator over one switching variable.
///
/// Triangular sets with unit peaks at `centers`; the outermost sets are shoulders that
/// stay at 1 beyond the grid. Consequents D_hat are updated by D_hat += phi s Psi(s) dt
/// and clamped to +/- d_hat_cap.
struct FuzzyAxis {
  std::vector<double> centers;
  double half_width = 1.0;
  std::vector<double> D_hat;
  double phi_adapt = 0.0;
  double d_hat_cap = 1.0;

  /// Throws DomainError unless R >= 2, centers strictly increasing and symmetric about 0
  /// (containing 0 for odd R), half_width covers the widest gap, phi_adapt >= 0,
  /// d_hat_cap > 0 and |D_hat| <= d_hat_cap.
  void validate() const;
  std::size_t rules() const { return centers.size(); }

  friend bool operator==(const FuzzyAxis&, const FuzzyAxis&) = default;
};

/// R sets with centers evenly spaced on [-half_range, half_range], half_width equal to the
/// spacing, and zero consequents.
FuzzyAxis make_uniform_axis(int rules, double half_range, double phi_adapt, double d_hat_cap);

std::vector<double> firing_strengths(const FuzzyAxis& axis, double s);

/// Psi: firing strengths divided by their sum.
std::vector<double> normalized_strengths(const FuzzyAxis& axis, double s);

/// d_hat = D_hat . Psi(s), clamped to +/- d_hat_cap.
double infer(const FuzzyAxis& axis, double s);

/// One explicit Euler step of the adaptation law. Rules with zero membership are untouched.
FuzzyAxis adapt(FuzzyAxis axis, double s, double dt);

}  // namespace crane::fuzzy
