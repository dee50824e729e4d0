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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crane::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSimulationFault = 3;

struct Options {
  std::filesystem::path scenario;
  std::filesystem::path output_dir = "out";
  std::vector<std::string> overrides;  ///< section.key=value
  std::optional<std::uint64_t> seed;
};

/// Writes telemetry.csv, metrics.txt, meta.txt and fuzzy.txt into output_dir.
/// 0 success, 2 config error, 3 simulation fault.
int cmd_run(const Options& options, std::ostream& out, std::ostream& err);

/// Runs the scenario with the fuzzy compensator off (plain/) and on (fuzzy/),
/// then writes compare.txt with fuzzy/plain ratios.
int cmd_compare(const Options& options, std::ostream& out, std::ostream& err);

/// Prints the closed-loop eigenvalue report. 0 stable, 1 unstable, 2 config error.
int cmd_validate(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace crane::cli
