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

#include "trotterlab/variable_step.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"
#include "trotterlab/numerics.hpp"

namespace trotterlab {
namespace {

// Frobenius norm squared up to the common factor 2^n; strings with the same letters but
// phases 1 and i are orthogonal in the real inner product, so real coefficients add in quadrature.
double frobenius2(const PauliSum& h) {
  const PauliSum merged = h.canonical();
  double s = 0.0;
  for (const auto& term : merged.terms()) s += term.coefficient * term.coefficient;
  return s;
}

}  // namespace

GaugeModel::GaugeModel(const PauliSum& h1, const PauliSum& h2) {
  if (h1.qubit_count() != h2.qubit_count()) throw DimensionError("gauge: H1 and H2 qubit counts differ");
  const PauliSum k = commutator(h1, h2);
  const PauliSum a = commutator(k, h1);
  const PauliSum b = commutator(k, h2 - h1);
  k2_ = frobenius2(k);
  a_ = frobenius2(a);
  c_ = frobenius2(b);
  b_ = 0.5 * (frobenius2(a + b) - a_ - c_);
}

double GaugeModel::alpha(double u, double rate) const {
  // Both norms carry rate^2, which cancels unless it is zero.
  const double denom = a_ + 2.0 * b_ * u + c_ * u * u;
  if (rate == 0.0 || !(denom > 1e-300) || k2_ == 0.0) {
    throw DegenerateError("gauge: vanishing denominator");
  }
  return -k2_ / denom;
}

double alpha_gauge(const PauliSum& h1, const PauliSum& h2, const Schedule& sched, double t) {
  return GaugeModel(h1, h2).alpha(sched.value(t), sched.rate(t));
}

double printed_s_bar(double gamma_bar, double beta_bar, double dt, double tau, double gamma_dot_alpha) {
  return -gamma_bar * beta_bar * dt * dt / (2.0 * tau) - gamma_dot_alpha;
}

VariableStepRecord step_record(const GaugeModel& gauge, const Schedule& sched, double t, double tau, double dt,
                               const VariableStepConfig& config) {
  VariableStepRecord rec;
  rec.t = t;
  rec.tau = tau;
  const StepIntegrals w = sched.step_integrals(t, t + tau);
  const double gamma_bar = w.w1 / tau;
  const double beta_bar = w.w2 / tau;
  const double u_dot = (sched.value(t + tau) - sched.value(t)) / tau;
  const GaussRule& rule = gauss_legendre(config.average_points);
  try {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = t + 0.5 * tau * (rule.nodes[i] + 1.0);
      acc += 0.5 * rule.weights[i] * gauge.alpha(sched.value(s), sched.rate(s));
    }
    rec.alpha_bar = acc;
  } catch (const DegenerateError&) {
    rec.alpha_bar = 0.0;
    rec.fallback = true;
  }
  rec.gamma_j = gamma_bar * tau / dt;
  rec.beta_j = beta_bar * tau / dt;
  rec.s_bar = printed_s_bar(gamma_bar, beta_bar, dt, tau, -u_dot * rec.alpha_bar);
  return rec;
}

VariableStepRecord solve_step(const GaugeModel& gauge, const Schedule& sched, double t, double dt, double t_end,
                              const VariableStepConfig& config) {
  if (!(dt > 0.0)) throw DomainError("solve_step: dt must be positive");
  if (!(config.ratio_limit >= 1.0)) throw DomainError("solve_step: ratio limit must be at least 1");
  const double remaining = t_end - t;
  if (!(remaining > 0.0)) throw DomainError("solve_step: no time remaining");
  const double lo = dt / config.ratio_limit;
  const double hi = dt * config.ratio_limit;
  if (config.ratio_limit == 1.0) return step_record(gauge, sched, t, std::min(dt, remaining), dt, config);

  auto matched = [&](double tau) {
    const double span = std::min(tau, remaining);
    const VariableStepRecord rec = step_record(gauge, sched, t, span, dt, config);
    const double gb = rec.gamma_j * dt / span;
    const double bb = rec.beta_j * dt / span;
    if (rec.fallback || gb * bb < config.fallback_threshold) return -1.0;
    const double u_dot = (sched.value(t + span) - sched.value(t)) / span;
    return std::clamp(2.0 * std::abs(u_dot * rec.alpha_bar) / (gb * bb), lo, hi);
  };

  double tau = dt;
  bool fallback = false;
  for (int it = 0;; ++it) {
    if (it >= config.max_iterations) throw ConvergenceError("solve_step: step-length fixed point did not converge");
    const double target = matched(tau);
    if (target < 0.0) {
      fallback = true;
      tau = dt;
      break;
    }
    const double next = tau + config.damping * (target - tau);
    const bool done = std::abs(next - tau) < config.tolerance;
    tau = next;
    if (done) break;
  }
  VariableStepRecord rec = step_record(gauge, sched, t, std::min(tau, remaining), dt, config);
  rec.fallback = rec.fallback || fallback;
  return rec;
}

VariableStepResult variable_step_evolution(const SplitSystem& system, const Schedule& sched, double dt,
                                           double fraction, const VariableStepConfig& config) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("variable step: fraction must lie in (0, 1]");
  if (!(dt > 0.0)) throw DomainError("variable step: dt must be positive");
  const GaugeModel gauge(system.h1(), system.h2());
  const double t_end = fraction * sched.total_time();
  if (std::llround(t_end / dt) < 1) throw DomainError("variable step: dt exceeds the evolution time");

  VariableStepResult result;
  result.plan.dt_nominal = dt;
  Matrix x = system.initial_state(sched);
  double t = 0.0;
  long long k = 0;
  while (t < t_end) {
    VariableStepRecord rec = solve_step(gauge, sched, t, dt, t_end, config);
    // Same last-step rule as the uniform grid: fold a short tail into the final step.
    const double remaining = t_end - t;
    const bool last = std::llround(remaining / rec.tau) <= 1;
    if (last) rec = step_record(gauge, sched, t, remaining, dt, config);
    // A forced uniform step reuses the k*dt grid of the standard propagator.
    const bool uniform = config.ratio_limit == 1.0 && rec.tau == dt;
    const double next = last ? t_end : uniform ? static_cast<double>(k + 1) * dt : t + rec.tau;
    // gamma_j dt = gamma_bar tau is the step integral itself; applying it directly keeps
    // forced uniform steps identical to the standard propagator.
    const StepIntegrals w = sched.step_integrals(t, next);
    apply_expm(system.h1_eigen(), w.w1, x);
    apply_expm(system.h2_eigen(), w.w2, x);
    result.plan.steps.push_back(rec);
    if (last) break;
    ++k;
    t = next;
  }
  result.state = x.col(0);
  return result;
}

VariableStepResult variable_step_evolution(const PauliSum& h1, const PauliSum& h2, const Schedule& sched,
                                           double dt, double fraction, const VariableStepConfig& config) {
  return variable_step_evolution(SplitSystem(h1, h2), sched, dt, fraction, config);
}

std::string plan_csv(const VariableStepPlan& plan) {
  std::ostringstream out;
  out << kPlanCsvHeader << '\n';
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    const auto& s = plan.steps[k];
    out << k << ',' << format_double(s.t) << ',' << format_double(s.tau) << ',' << format_double(s.gamma_j) << ','
        << format_double(s.beta_j) << ',' << format_double(s.s_bar) << ',' << format_double(s.alpha_bar) << '\n';
  }
  return out.str();
}

void write_plan_csv(const VariableStepPlan& plan, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << plan_csv(plan);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace trotterlab
