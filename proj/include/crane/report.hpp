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

#include <charconv>
#include <filesystem>
#include <string>

#include "crane/simulation.hpp"

namespace crane::report {

/// Shortest decimal representation that round-trips; locale independent.
std::string format_number(double value);

/// Column order of telemetry.csv.
inline constexpr const char* kTelemetryHeader =
    "t,x,l,theta,x_dot,l_dot,theta_dot,x_d,l_d,s_x,s_l,u_x,u_l,d_hat_x,d_hat_l,dist_x,dist_l";

std::string telemetry_csv(const sim::RunLog& log);
/// `name=value` per line.
std::string metrics_text(const sim::Metrics& metrics);
/// Header plus `metric,<label_a>,<label_b>,ratio` rows; ratio is b / a.
std::string compare_text(const sim::CompareReport& report, const std::string& label_a,
                         const std::string& label_b);
/// Rule grids and final consequents of both compensator axes.
std::string fuzzy_text(const sim::RunLog& log);

/// Writes text to a file with `\n` line endings. Throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace crane::report
