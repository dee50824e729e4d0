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

#include "crane/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "crane/errors.hpp"
#include "crane/report.hpp"

namespace crane::scenario {

namespace {

enum class Kind { Number, Integer, Bool, Word };

struct KeyDef {
  const char* key;
  Kind kind;
  const char* fallback;  // nullptr: required
};

struct SectionDef {
  const char* name;
  std::vector<KeyDef> keys;
};

// Keys whose default depends on other values are resolved in resolve_defaults().
constexpr const char* kDerived = "<derived>";

const std::vector<SectionDef>& schema() {
  static const std::vector<SectionDef> sections{
      {"plant",
       {{"M", Kind::Number, nullptr},
        {"m", Kind::Number, nullptr},
        {"g", Kind::Number, "9.81"},
        {"friction_x", Kind::Number, "0"},
        {"friction_l", Kind::Number, "0"},
        {"dist_x", Kind::Number, "0"},
        {"dist_x_amplitude", Kind::Number, "0"},
        {"dist_x_frequency", Kind::Number, "0"},
        {"dist_x_onset", Kind::Number, "0"},
        {"dist_l", Kind::Number, "0"},
        {"dist_l_amplitude", Kind::Number, "0"},
        {"dist_l_frequency", Kind::Number, "0"},
        {"dist_l_onset", Kind::Number, "0"}}},
      {"nominal",
       {{"M", Kind::Number, kDerived}, {"m", Kind::Number, kDerived}, {"g", Kind::Number, kDerived}}},
      {"gains",
       {{"alpha_x", Kind::Number, nullptr},
        {"alpha_l", Kind::Number, nullptr},
        {"alpha_theta", Kind::Number, nullptr},
        {"lambda_x", Kind::Number, nullptr},
        {"lambda_l", Kind::Number, nullptr},
        {"lambda_theta", Kind::Number, nullptr},
        {"K_x", Kind::Number, nullptr},
        {"K_l", Kind::Number, nullptr},
        {"phi_x", Kind::Number, nullptr},
        {"phi_l", Kind::Number, nullptr},
        {"switching", Kind::Word, "smooth"}}},
      {"fuzzy",
       {{"enabled", Kind::Bool, "false"},
        {"rules", Kind::Integer, "7"},
        {"range", Kind::Number, "2"},
        {"rate_x", Kind::Number, "5"},
        {"rate_l", Kind::Number, "5"},
        {"cap_x", Kind::Number, kDerived},
        {"cap_l", Kind::Number, kDerived},
        {"initial_x", Kind::Number, "0"},
        {"initial_l", Kind::Number, "0"}}},
      // type-specific keys are checked separately
      {"trajectory",
       {{"type", Kind::Word, nullptr},
        {"x_target", Kind::Number, nullptr},
        {"l_target", Kind::Number, nullptr},
        {"x_start", Kind::Number, nullptr},
        {"l_start", Kind::Number, nullptr},
        {"x_end", Kind::Number, nullptr},
        {"l_end", Kind::Number, nullptr},
        {"duration", Kind::Number, nullptr}}},
      {"obstacle",
       {{"x_center", Kind::Number, nullptr},
        {"width", Kind::Number, nullptr},
        {"height", Kind::Number, nullptr},
        {"top_clearance", Kind::Number, nullptr},
        {"floor_depth", Kind::Number, nullptr}}},
      {"sim",
       {{"t_end", Kind::Number, nullptr},
        {"dt_plant", Kind::Number, "0.001"},
        {"dt_control", Kind::Number, "0.01"},
        {"seed", Kind::Integer, "0"},
        {"x0", Kind::Number, nullptr},
        {"l0", Kind::Number, nullptr},
        {"theta0", Kind::Number, "0"},
        {"x_dot0", Kind::Number, "0"},
        {"l_dot0", Kind::Number, "0"},
        {"theta_dot0", Kind::Number, "0"},
        {"noise_x", Kind::Number, "0"},
        {"noise_l", Kind::Number, "0"},
        {"noise_theta", Kind::Number, "0"},
        {"noise_x_dot", Kind::Number, "0"},
        {"noise_l_dot", Kind::Number, "0"},
        {"noise_theta_dot", Kind::Number, "0"},
        {"u_max_x", Kind::Number, "0"},
        {"u_max_l", Kind::Number, "0"},
        {"allow_unstable_gains", Kind::Bool, "false"}}},
  };
  return sections;
}

const std::map<std::string, std::vector<std::string>>& trajectory_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"setpoint", {"x_target", "l_target"}},
      {"semicircle", {"x_start", "l_start", "x_end", "l_end", "duration"}},
  };
  return keys;
}

using RawSections = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || begin == end || !std::isfinite(value)) {
    throw ConfigError(where + ": expected a finite decimal number, got '" + text + "'");
  }
  return value;
}

long long parse_integer(const std::string& text, const std::string& where) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(where + ": expected an integer, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(where + ": expected true or false, got '" + text + "'");
}

// Canonical spelling so the echo round-trips bit for bit.
std::string normalize(const std::string& value, Kind kind, const std::string& where) {
  switch (kind) {
    case Kind::Number: return report::format_number(parse_number(value, where));
    case Kind::Integer: return std::to_string(parse_integer(value, where));
    case Kind::Bool: return parse_bool(value, where) ? "true" : "false";
    case Kind::Word: return value;
  }
  return value;
}

RawSections read_raw(std::string_view text, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": line " + std::to_string(e.line()) + ": " + e.message());
  }
  RawSections raw;
  for (const auto& [section, child] : tree) {
    if (child.empty()) {
      throw ConfigError(source + ": key '" + section + "' must be inside a [section]");
    }
    auto& entries = raw[section];
    for (const auto& [key, value] : child) entries[key] = trim(value.data());
  }
  return raw;
}

const SectionDef* find_section(const std::string& name) {
  for (const auto& s : schema()) {
    if (name == s.name) return &s;
  }
  return nullptr;
}

const KeyDef* find_key(const SectionDef& section, const std::string& key) {
  for (const auto& k : section.keys) {
    if (key == k.key) return &k;
  }
  return nullptr;
}

}  // namespace

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  const auto dot = text.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq || dot == 0 ||
      dot + 1 == eq) {
    throw ConfigError("override '" + std::string(text) + "' is not of the form section.key=value");
  }
  return {trim(text.substr(0, dot)), trim(text.substr(dot + 1, eq - dot - 1)),
          trim(text.substr(eq + 1))};
}

const std::string* ResolvedScenario::find(std::string_view section, std::string_view key) const {
  for (const auto& s : sections) {
    if (s.name != section) continue;
    for (const auto& [k, v] : s.entries) {
      if (k == key) return &v;
    }
  }
  return nullptr;
}

ResolvedScenario resolve(std::string_view text, std::span<const Override> overrides,
                         const std::string& source) {
  RawSections raw = read_raw(text, source);
  for (const auto& o : overrides) raw[o.section][o.key] = o.value;

  for (const auto& [section, entries] : raw) {
    const SectionDef* def = find_section(section);
    if (!def) throw ConfigError(source + ": unknown section [" + section + "]");
    for (const auto& [key, value] : entries) {
      if (!find_key(*def, key)) throw ConfigError(source + ": unknown key " + section + "." + key);
    }
  }

  if (!raw.contains("trajectory") || !raw["trajectory"].contains("type")) {
    throw ConfigError(source + ": missing required key trajectory.type");
  }
  const std::string trajectory_type = raw["trajectory"]["type"];
  const auto type_it = trajectory_keys().find(trajectory_type);
  if (type_it == trajectory_keys().end()) {
    throw ConfigError(source + ": trajectory.type must be setpoint or semicircle, got '" +
                      trajectory_type + "'");
  }
  const std::set<std::string> allowed(type_it->second.begin(), type_it->second.end());
  for (const auto& [key, value] : raw["trajectory"]) {
    if (key != "type" && !allowed.contains(key)) {
      throw ConfigError(source + ": unknown key trajectory." + key + " for type " + trajectory_type);
    }
  }

  ResolvedScenario out;
  for (const auto& def : schema()) {
    const std::string name = def.name;
    const bool present = raw.contains(name);
    if (name == "obstacle" && !present) continue;
    const auto& given = present ? raw.at(name) : std::map<std::string, std::string>{};

    ResolvedScenario::Section section{name, {}};
    for (const auto& key : def.keys) {
      const std::string where = name + "." + key.key;
      if (name == "trajectory" && key.key != std::string("type") && !allowed.contains(key.key)) {
        continue;
      }
      std::string value;
      if (const auto it = given.find(key.key); it != given.end()) {
        value = normalize(it->second, key.kind, where);
      } else if (key.fallback == nullptr) {
        throw ConfigError(source + ": missing required key " + where + " in section [" + name + "]");
      } else if (key.fallback == kDerived) {
        continue;  // filled below
      } else {
        value = key.fallback;
      }
      section.entries.emplace_back(key.key, value);
    }
    out.sections.push_back(std::move(section));
  }

  // Derived defaults: nominal model copies the plant, caps are (M + m) g of the nominal model.
  auto section_of = [&out](const std::string& name) -> ResolvedScenario::Section& {
    return *std::find_if(out.sections.begin(), out.sections.end(),
                         [&](const auto& s) { return s.name == name; });
  };
  auto fill = [](ResolvedScenario::Section& section, const std::string& key, const std::string& value,
                 std::size_t position) {
    const bool has = std::any_of(section.entries.begin(), section.entries.end(),
                                 [&](const auto& e) { return e.first == key; });
    if (!has) section.entries.insert(section.entries.begin() + position, {key, value});
  };
  auto& nominal = section_of("nominal");
  fill(nominal, "M", *out.find("plant", "M"), 0);
  fill(nominal, "m", *out.find("plant", "m"), 1);
  fill(nominal, "g", *out.find("plant", "g"), 2);
  const double cap = (parse_number(*out.find("nominal", "M"), "nominal.M") +
                      parse_number(*out.find("nominal", "m"), "nominal.m")) *
                     parse_number(*out.find("nominal", "g"), "nominal.g");
  auto& fuzzy_section = section_of("fuzzy");
  fill(fuzzy_section, "cap_x", report::format_number(cap), 5);
  fill(fuzzy_section, "cap_l", report::format_number(cap), 6);
  return out;
}

ResolvedScenario resolve_file(const std::filesystem::path& path, std::span<const Override> overrides) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot read scenario file " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return resolve(text.str(), overrides, path.string());
}

sim::ScenarioConfig to_config(const ResolvedScenario& s) {
  auto num = [&s](const char* section, const char* key) {
    const std::string* v = s.find(section, key);
    if (!v) throw ConfigError(std::string("missing required key ") + section + "." + key);
    return parse_number(*v, std::string(section) + "." + key);
  };
  auto flag = [&s](const char* section, const char* key) {
    return parse_bool(*s.find(section, key), std::string(section) + "." + key);
  };

  sim::ScenarioConfig c;
  c.plant.M = num("plant", "M");
  c.plant.m = num("plant", "m");
  c.plant.g = num("plant", "g");
  c.plant.friction_viscous_x = num("plant", "friction_x");
  c.plant.friction_viscous_l = num("plant", "friction_l");
  c.plant.disturbance_x = {num("plant", "dist_x"), num("plant", "dist_x_amplitude"),
                           num("plant", "dist_x_frequency"), num("plant", "dist_x_onset")};
  c.plant.disturbance_l = {num("plant", "dist_l"), num("plant", "dist_l_amplitude"),
                           num("plant", "dist_l_frequency"), num("plant", "dist_l_onset")};

  c.nominal.M = num("nominal", "M");
  c.nominal.m = num("nominal", "m");
  c.nominal.g = num("nominal", "g");

  c.gains.alpha_x = num("gains", "alpha_x");
  c.gains.alpha_l = num("gains", "alpha_l");
  c.gains.alpha_theta = num("gains", "alpha_theta");
  c.gains.lambda_x = num("gains", "lambda_x");
  c.gains.lambda_l = num("gains", "lambda_l");
  c.gains.lambda_theta = num("gains", "lambda_theta");
  c.gains.K_x = num("gains", "K_x");
  c.gains.K_l = num("gains", "K_l");
  c.gains.phi_x = num("gains", "phi_x");
  c.gains.phi_l = num("gains", "phi_l");
  const std::string& law = *s.find("gains", "switching");
  if (law == "smooth") {
    c.gains.law = smc::SwitchingLaw::BoundaryLayer;
  } else if (law == "signum") {
    c.gains.law = smc::SwitchingLaw::Signum;
  } else {
    throw ConfigError("gains.switching must be smooth or signum, got '" + law + "'");
  }
  try {
    c.gains.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[gains] ") + e.what());
  }

  c.fuzzy.enabled = flag("fuzzy", "enabled");
  const long long rules = parse_integer(*s.find("fuzzy", "rules"), "fuzzy.rules");
  if (rules < 2 || rules > 1000) throw ConfigError("fuzzy.rules must be in [2, 1000]");
  const double range = num("fuzzy", "range");
  try {
    c.fuzzy.x = fuzzy::make_uniform_axis(static_cast<int>(rules), range * c.gains.phi_x,
                                         num("fuzzy", "rate_x"), num("fuzzy", "cap_x"));
    c.fuzzy.l = fuzzy::make_uniform_axis(static_cast<int>(rules), range * c.gains.phi_l,
                                         num("fuzzy", "rate_l"), num("fuzzy", "cap_l"));
    std::fill(c.fuzzy.x.D_hat.begin(), c.fuzzy.x.D_hat.end(), num("fuzzy", "initial_x"));
    std::fill(c.fuzzy.l.D_hat.begin(), c.fuzzy.l.D_hat.end(), num("fuzzy", "initial_l"));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[fuzzy] ") + e.what());
  }

  const std::string& type = *s.find("trajectory", "type");
  if (type == "setpoint") {
    c.trajectory = reference::SetpointTarget{num("trajectory", "x_target"), num("trajectory", "l_target")};
  } else {
    c.trajectory = reference::SemicircleSpec{num("trajectory", "x_start"), num("trajectory", "l_start"),
                                             num("trajectory", "x_end"), num("trajectory", "l_end"),
                                             num("trajectory", "duration")};
  }

  if (s.find("obstacle", "x_center")) {
    c.obstacle = reference::ObstacleSpec{num("obstacle", "x_center"), num("obstacle", "width"),
                                         num("obstacle", "height"), num("obstacle", "top_clearance"),
                                         num("obstacle", "floor_depth")};
  }

  c.t_end = num("sim", "t_end");
  c.dt_plant = num("sim", "dt_plant");
  c.dt_control = num("sim", "dt_control");
  const long long seed = parse_integer(*s.find("sim", "seed"), "sim.seed");
  if (seed < 0) throw ConfigError("sim.seed must be >= 0");
  c.rng_seed = static_cast<std::uint64_t>(seed);
  c.initial_state.x = num("sim", "x0");
  c.initial_state.l = num("sim", "l0");
  c.initial_state.theta = num("sim", "theta0");
  c.initial_state.x_dot = num("sim", "x_dot0");
  c.initial_state.l_dot = num("sim", "l_dot0");
  c.initial_state.theta_dot = num("sim", "theta_dot0");
  c.noise.std_dev = {num("sim", "noise_x"),     num("sim", "noise_l"),     num("sim", "noise_theta"),
                     num("sim", "noise_x_dot"), num("sim", "noise_l_dot"), num("sim", "noise_theta_dot")};
  c.u_max_x = num("sim", "u_max_x");
  c.u_max_l = num("sim", "u_max_l");
  c.allow_unstable_gains = flag("sim", "allow_unstable_gains");

  c.validate();
  return c;
}

std::string format(const ResolvedScenario& scenario) {
  std::string out;
  for (const auto& section : scenario.sections) {
    if (!out.empty()) out += '\n';
    out += "[" + section.name + "]\n";
    for (const auto& [key, value] : section.entries) out += key + " = " + value + "\n";
  }
  return out;
}

}  // namespace crane::scenario
