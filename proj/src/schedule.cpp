// Copyright 2026 The trotterlab Authors
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

#include "trotterlab/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

// Tolerated overshoot when step boundaries accumulate rounding error.
constexpr double kTimeSlack = 1e-12;
constexpr double kQuadTol = 1e-12;

}  // namespace

std::string to_string(RampKind kind) {
  switch (kind) {
    case RampKind::linear: return "linear";
    case RampKind::smoothstep: return "smoothstep";
    case RampKind::tabulated: return "tabulated";
  }
  return "unknown";
}

RampKind ramp_kind_from_string(const std::string& name) {
  if (name == "linear") return RampKind::linear;
  if (name == "smoothstep") return RampKind::smoothstep;
  if (name == "tabulated") return RampKind::tabulated;
  throw DomainError("unknown ramp kind '" + name + "'");
}

Schedule Schedule::linear(double total_time) {
  if (!(total_time > 0.0)) throw DomainError("Schedule: total time must be positive");
  return Schedule(RampKind::linear, total_time);
}

Schedule Schedule::smoothstep(double total_time) {
  if (!(total_time > 0.0)) throw DomainError("Schedule: total time must be positive");
  return Schedule(RampKind::smoothstep, total_time);
}

Schedule Schedule::tabulated(double total_time, std::vector<double> xs, std::vector<double> values) {
  if (!(total_time > 0.0)) throw DomainError("Schedule: total time must be positive");
  if (xs.empty()) throw DomainError("Schedule: tabulated ramp needs knots");
  for (double x : xs) {
    if (x < 0.0 || x > 1.0) throw DomainError("Schedule: knot times must lie in [0, 1]");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("Schedule: tabulated values must lie in [0, 1]");
  }
  Schedule s(RampKind::tabulated, total_time);
  s.table_ = MonotoneCubic(std::move(xs), std::move(values));
  return s;
}

Schedule Schedule::with_total_time(double total_time) const {
  if (!(total_time > 0.0)) throw DomainError("Schedule: total time must be positive");
  Schedule s = *this;
  s.total_time_ = total_time;
  return s;
}

double Schedule::ramp(double x) const {
  switch (kind_) {
    case RampKind::linear: return x;
    case RampKind::smoothstep: return x * x * (3.0 - 2.0 * x);
    case RampKind::tabulated: return std::clamp(table_(x), 0.0, 1.0);
  }
  return x;
}

double Schedule::ramp_derivative(double x) const {
  switch (kind_) {
    case RampKind::linear: return 1.0;
    case RampKind::smoothstep: return 6.0 * x * (1.0 - x);
    case RampKind::tabulated: {
      const double v = table_(x);
      if (v <= 0.0 || v >= 1.0) return 0.0;
      return table_.derivative(x);
    }
  }
  return 1.0;
}

double Schedule::clamp_time(double t) const {
  const double slack = kTimeSlack * std::max(1.0, total_time_);
  if (!(t >= -slack && t <= total_time_ + slack)) {
    throw DomainError("Schedule: time " + std::to_string(t) + " outside [0, " +
                      std::to_string(total_time_) + "]");
  }
  return std::clamp(t, 0.0, total_time_);
}

double Schedule::value(double t) const { return ramp(clamp_time(t) / total_time_); }

double Schedule::rate(double t) const {
  return ramp_derivative(clamp_time(t) / total_time_) / total_time_;
}

StepIntegrals Schedule::step_integrals(double t_start, double t_end) const {
  if (!(t_end > t_start)) throw DomainError("step_integrals: interval must satisfy t_start < t_end");
  const double a = clamp_time(t_start);
  const double b = clamp_time(t_end);
  const double len = t_end - t_start;
  double w2 = 0.0;
  switch (kind_) {
    case RampKind::linear:
      w2 = (b * b - a * a) / (2.0 * total_time_);
      break;
    case RampKind::smoothstep:
    case RampKind::tabulated:
      w2 = integrate([this](double t) { return ramp(t / total_time_); }, a, b, kQuadTol);
      break;
  }
  return {len - w2, w2};
}

Schedule load_tabulated_ramp(const std::string& path, double total_time) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ramp file '" + path + "'");
  CsvTable table = read_csv(in);
  const std::size_t cx = table.column("t_norm");
  const std::size_t cu = table.column("u");
  std::vector<double> xs, us;
  for (const auto& row : table.rows) {
    xs.push_back(parse_double(row.at(cx)));
    us.push_back(parse_double(row.at(cu)));
  }
  return Schedule::tabulated(total_time, std::move(xs), std::move(us));
}

void save_tabulated_ramp(const std::string& path, const std::vector<double>& xs,
                         const std::vector<double>& values) {
  if (xs.size() != values.size()) throw DimensionError("save_tabulated_ramp: length mismatch");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write ramp file '" + path + "'");
  out << "t_norm,u\n";
  for (std::size_t i = 0; i < xs.size(); ++i) out << format_double(xs[i]) << ',' << format_double(values[i]) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace trotterlab
