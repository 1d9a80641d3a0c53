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

#ifndef TROTTERLAB_SCHEDULE_HPP
#define TROTTERLAB_SCHEDULE_HPP

#include <string>
#include <vector>

#include "trotterlab/numerics.hpp"

namespace trotterlab {

enum class RampKind { linear, smoothstep, tabulated };

std::string to_string(RampKind kind);
RampKind ramp_kind_from_string(const std::string& name);

/// Integrals of the two interpolation weights over one step.
struct StepIntegrals {
  double w1 = 0.0;  // integral of 1 - u
  double w2 = 0.0;  // integral of u
};

/// Control u(t) = s(t / T) on [0, T].
class Schedule {
 public:
  static Schedule linear(double total_time);
  /// s(x) = 3x^2 - 2x^3.
  static Schedule smoothstep(double total_time);
  /// Knots (x, s) with x in [0, 1] increasing; values outside [0, 1] are rejected.
  static Schedule tabulated(double total_time, std::vector<double> xs, std::vector<double> values);

  RampKind kind() const { return kind_; }
  double total_time() const { return total_time_; }
  Schedule with_total_time(double total_time) const;
  const MonotoneCubic& table() const { return table_; }

  /// s(x) for x in [0, 1].
  double ramp(double x) const;
  /// ds/dx.
  double ramp_derivative(double x) const;

  /// u(t); throws DomainError for t outside [0, T].
  double value(double t) const;
  /// du/dt.
  double rate(double t) const;

  /// Integrals of (1 - u) and u over [t_start, t_end].
  StepIntegrals step_integrals(double t_start, double t_end) const;

 private:
  Schedule(RampKind kind, double total_time) : kind_(kind), total_time_(total_time) {}
  double clamp_time(double t) const;

  RampKind kind_ = RampKind::linear;
  double total_time_ = 1.0;
  MonotoneCubic table_;
};

/// CSV with header "t_norm,u".
Schedule load_tabulated_ramp(const std::string& path, double total_time);
void save_tabulated_ramp(const std::string& path, const std::vector<double>& xs,
                         const std::vector<double>& values);

}  // namespace trotterlab

#endif  // TROTTERLAB_SCHEDULE_HPP
