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

#include "crane/cli.hpp"

#include <ostream>
#include <stdexcept>

#include "crane/errors.hpp"
#include "crane/report.hpp"
#include "crane/scenario.hpp"
#include "crane/simulation.hpp"
#include "crane/smc.hpp"

namespace crane::cli {

namespace {

scenario::ResolvedScenario resolve(const Options& options) {
  std::vector<scenario::Override> overrides;
  for (const auto& text : options.overrides) overrides.push_back(scenario::parse_override(text));
  if (options.seed) overrides.push_back({"sim", "seed", std::to_string(*options.seed)});
  return scenario::resolve_file(options.scenario, overrides);
}

void write_run(const std::filesystem::path& dir, const scenario::ResolvedScenario& resolved,
               const sim::RunLog& log) {
  std::filesystem::create_directories(dir);
  report::write_file(dir / "telemetry.csv", report::telemetry_csv(log));
  report::write_file(dir / "metrics.txt", report::metrics_text(log.metrics));
  report::write_file(dir / "meta.txt", scenario::format(resolved));
  report::write_file(dir / "fuzzy.txt", report::fuzzy_text(log));
}

void print_warnings(const sim::RunLog& log, std::ostream& err) {
  for (const auto& w : log.warnings) err << "warning: " << w << "\n";
}

scenario::ResolvedScenario with_fuzzy(scenario::ResolvedScenario resolved, bool enabled) {
  for (auto& section : resolved.sections) {
    if (section.name != "fuzzy") continue;
    for (auto& [key, value] : section.entries) {
      if (key == "enabled") value = enabled ? "true" : "false";
    }
  }
  return resolved;
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SimulationFault& e) {
    err << "simulation fault: " << e.what() << "\n";
    return kExitSimulationFault;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "output error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace

int cmd_run(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto resolved = resolve(options);
    const auto config = scenario::to_config(resolved);
    const auto log = sim::run(config);
    print_warnings(log, err);
    write_run(options.output_dir, resolved, log);
    out << "wrote " << log.records.size() << " records to " << options.output_dir.string() << "\n";
    out << report::metrics_text(log.metrics);
    return kExitOk;
  });
}

int cmd_compare(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto resolved = resolve(options);
    const auto plain = with_fuzzy(resolved, false);
    const auto fuzzy = with_fuzzy(resolved, true);
    const auto report = sim::compare(scenario::to_config(plain), scenario::to_config(fuzzy));
    print_warnings(report.a, err);
    print_warnings(report.b, err);
    write_run(options.output_dir / "plain", plain, report.a);
    write_run(options.output_dir / "fuzzy", fuzzy, report.b);
    const std::string table = report::compare_text(report, "plain", "fuzzy");
    report::write_file(options.output_dir / "compare.txt", table);
    out << table;
    return kExitOk;
  });
}

int cmd_validate(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = scenario::to_config(resolve(options));
    const auto op = config.operating_point();
    out << "operating point: x=" << op.x << " l=" << op.l << "\n";
    smc::StabilityReport report;
    try {
      report = smc::validate_surface_stability(config.gains, config.nominal, op);
    } catch (const SingularMatrixError& e) {
      out << "UNSTABLE (control law singular at the operating point: " << e.what() << ")\n";
      return kExitValidationFailed;
    }
    out << report.describe();
    return report.stable ? kExitOk : kExitValidationFailed;
  });
}

}  // namespace crane::cli
