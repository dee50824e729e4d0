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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crane/simulation.hpp"

namespace crane::scenario {

/// One `section.key=value` command-line override.
struct Override {
  std::string section;
  std::string key;
  std::string value;
};

/// Parses `section.key=value`. Throws ConfigError on malformed input.
Override parse_override(std::string_view text);

/// Every key with its resolved value (defaults filled in), sections in canonical order.
struct ResolvedScenario {
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Section> sections;

  const std::string* find(std::string_view section, std::string_view key) const;
};

/// Reads the key-value document, applies overrides, rejects unknown sections and keys,
/// reports missing required keys as `section.key`, and fills documented defaults.
/// Throws ConfigError.
ResolvedScenario resolve(std::string_view text, std::span<const Override> overrides = {},
                         const std::string& source = "<scenario>");

ResolvedScenario resolve_file(const std::filesystem::path& path,
                              std::span<const Override> overrides = {});

/// Builds the simulation config. Throws ConfigError on values outside their domain.
sim::ScenarioConfig to_config(const ResolvedScenario& scenario);

/// Echo in the same format; re-resolving it reproduces an identical config.
std::string format(const ResolvedScenario& scenario);

inline sim::ScenarioConfig load(const std::filesystem::path& path,
                                std::span<const Override> overrides = {}) {
  return to_config(resolve_file(path, overrides));
}

}  // namespace crane::scenario
