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

#include "crane/report.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace crane::report {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buffer.data(), end);
}

std::string telemetry_csv(const sim::RunLog& log) {
  std::string out = kTelemetryHeader;
  out += '\n';
  out.reserve(log.records.size() * 220);
  for (const auto& r : log.records) {
    const std::array<double, 17> row{r.state.t,     r.state.x,     r.state.l,       r.state.theta,
                                     r.state.x_dot, r.state.l_dot, r.state.theta_dot, r.ref.x_d,
                                     r.ref.l_d,     r.s_x,         r.s_l,           r.u.u_x,
                                     r.u.u_l,       r.d_hat_x,     r.d_hat_l,       r.dist_x,
                                     r.dist_l};
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string metrics_text(const sim::Metrics& metrics) {
  std::string out;
  for (const auto& [name, value] : metrics.entries()) out += name + "=" + format_number(value) + "\n";
  return out;
}

std::string compare_text(const sim::CompareReport& report, const std::string& label_a,
                         const std::string& label_b) {
  std::string out = "metric," + label_a + "," + label_b + ",ratio\n";
  for (const auto& m : report.metrics) {
    out += m.name + "," + format_number(m.a) + "," + format_number(m.b) + "," +
           format_number(m.ratio) + "\n";
  }
  return out;
}

namespace {

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

void append_axis(std::string& out, const char* name, const fuzzy::FuzzyAxis& axis) {
  out += std::string(name) + ".centers=" + join(axis.centers) + "\n";
  out += std::string(name) + ".half_width=" + format_number(axis.half_width) + "\n";
  out += std::string(name) + ".rate=" + format_number(axis.phi_adapt) + "\n";
  out += std::string(name) + ".cap=" + format_number(axis.d_hat_cap) + "\n";
  out += std::string(name) + ".D_hat=" + join(axis.D_hat) + "\n";
}

}  // namespace

std::string fuzzy_text(const sim::RunLog& log) {
  std::string out;
  append_axis(out, "x", log.final_fuzzy_x);
  append_axis(out, "l", log.final_fuzzy_l);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace crane::report
