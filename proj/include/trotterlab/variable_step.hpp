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

#ifndef TROTTERLAB_VARIABLE_STEP_HPP
#define TROTTERLAB_VARIABLE_STEP_HPP

#include <string>
#include <vector>

#include "trotterlab/linalg.hpp"
#include "trotterlab/pauli.hpp"
#include "trotterlab/propagator.hpp"
#include "trotterlab/schedule.hpp"

namespace trotterlab {

/// Frobenius-norm gauge coefficient of H(u) = H1 + u (H2 - H1), in closed form in u.
class GaugeModel {
 public:
  GaugeModel(const PauliSum& h1, const PauliSum& h2);

  /// alpha = -||[H, dH]||_F^2 / ||[[H, dH], H]||_F^2 with dH = rate (H2 - H1).
  /// Throws DegenerateError when the denominator vanishes (including rate = 0).
  double alpha(double u, double rate) const;

 private:
  double k2_ = 0.0;                 // ||[H1, H2]||^2
  double a_ = 0.0, b_ = 0.0, c_ = 0.0;  // ||[K, H(u)]||^2 = a + 2bu + cu^2
};

/// alpha at time t for the schedule's u(t) and du/dt.
double alpha_gauge(const PauliSum& h1, const PauliSum& h2, const Schedule& sched, double t);

/// s_bar = -gamma_bar beta_bar dt^2 / (2 tau) - gamma_dot alpha_bar.
double printed_s_bar(double gamma_bar, double beta_bar, double dt, double tau, double gamma_dot_alpha);

struct VariableStepConfig {
  double ratio_limit = 2.0;       // tau in [dt / ratio, ratio * dt]; 1 forces tau = dt
  double damping = 0.5;
  double tolerance = 1e-10;
  int max_iterations = 100;
  double fallback_threshold = 1e-8;  // gamma_bar * beta_bar below this uses tau = dt
  int average_points = 5;
};

struct VariableStepRecord {
  double t = 0.0;
  double tau = 0.0;
  double gamma_j = 0.0;
  double beta_j = 0.0;
  double s_bar = 0.0;
  double alpha_bar = 0.0;
  bool fallback = false;
};

struct VariableStepPlan {
  double dt_nominal = 0.0;
  std::vector<VariableStepRecord> steps;
};

/// Step starting at t: tau matched to the counter-diabatic term, averages over [t, t + tau]
/// (truncated at t_end). Throws ConvergenceError when the fixed point is not reached.
VariableStepRecord solve_step(const GaugeModel& gauge, const Schedule& sched, double t, double dt,
                              double t_end, const VariableStepConfig& config = {});
/// Record for a step of prescribed length tau.
VariableStepRecord step_record(const GaugeModel& gauge, const Schedule& sched, double t, double tau, double dt,
                               const VariableStepConfig& config = {});

struct VariableStepResult {
  Vector state;
  VariableStepPlan plan;
};

/// Applies exp(-i beta_j H2 dt) exp(-i gamma_j H1 dt) per step from the ground state of H(u(0))
/// up to fraction * T.
VariableStepResult variable_step_evolution(const SplitSystem& system, const Schedule& sched, double dt,
                                           double fraction = 1.0, const VariableStepConfig& config = {});
VariableStepResult variable_step_evolution(const PauliSum& h1, const PauliSum& h2, const Schedule& sched,
                                           double dt, double fraction = 1.0, const VariableStepConfig& config = {});

inline constexpr const char* kPlanCsvHeader = "k,t,tau,gamma_j,beta_j,s_bar,alpha_bar";
std::string plan_csv(const VariableStepPlan& plan);
void write_plan_csv(const VariableStepPlan& plan, const std::string& path);

}  // namespace trotterlab

#endif  // TROTTERLAB_VARIABLE_STEP_HPP
