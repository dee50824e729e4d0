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

#include <iostream>

#include <CLI11.hpp>

#include "crane/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop overhead crane simulator (sliding mode + adaptive fuzzy compensation)"};
  app.require_subcommand(1);

  crane::cli::Options options;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool writes_output) {
    cmd->add_option("scenario", options.scenario, "Scenario file")->required();
    cmd->add_option("--override", options.overrides, "section.key=value (repeatable)");
    cmd->add_option("--seed", seed, "RNG seed, overrides sim.seed");
    if (writes_output) cmd->add_option("--out", options.output_dir, "Output directory");
  };

  auto* run = app.add_subcommand("run", "Simulate one scenario and write telemetry");
  add_common(run, true);
  auto* compare = app.add_subcommand("compare", "Run with the fuzzy compensator off and on");
  add_common(compare, true);
  auto* validate = app.add_subcommand("validate", "Check closed-loop stability of the gain set");
  add_common(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return crane::cli::kExitConfigError;
  }

  for (auto* cmd : {run, compare, validate}) {
    if (cmd->parsed() && cmd->count("--seed") > 0) options.seed = seed;
  }

  if (run->parsed()) return crane::cli::cmd_run(options, std::cout, std::cerr);
  if (compare->parsed()) return crane::cli::cmd_compare(options, std::cout, std::cerr);
  return crane::cli::cmd_validate(options, std::cout, std::cerr);
}
