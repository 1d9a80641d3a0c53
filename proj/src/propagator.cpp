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

#include "trotterlab/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

constexpr int kMaxHalvings = 24;
constexpr int kMaxExtrapolationColumns = 6;

void check_pair(const PauliSum& h1, const PauliSum& h2) {
  if (h1.qubit_count() != h2.qubit_count()) {
    throw DimensionError("H1 and H2 act on different qubit counts");
  }
  if (!h1.is_hermitian() || !h2.is_hermitian()) throw ValidityError("H1 and H2 must be Hermitian Pauli sums");
}

Matrix midpoint_product(const SplitSystem& system, const Schedule& sched, double t_end, long steps,
                        const Matrix& x0) {
  Matrix x = x0;
  const double h = t_end / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    const double u = sched.value((static_cast<double>(k) + 0.5) * h);
    expm_action(system.sparse_at(u), h, x);
  }
  return x;
}

}  // namespace

std::string to_string(Ordering ordering) {
  return ordering == Ordering::h1_first ? "H1_first" : "H2_first";
}

Ordering ordering_from_string(const std::string& name) {
  if (name == "H1_first" || name == "h1_first") return Ordering::h1_first;
  if (name == "H2_first" || name == "h2_first") return Ordering::h2_first;
  throw DomainError("unknown ordering '" + name + "' (expected H1_first or H2_first)");
}

void validate_plan(const TrotterPlan& plan, double total_time) {
  if (plan.order != 1 && plan.order != 2) throw DomainError("TrotterPlan: order must be 1 or 2");
  if (!(plan.dt > 0.0) || !std::isfinite(plan.dt)) throw DomainError("TrotterPlan: dt must be positive");
  if (!(plan.fraction > 0.0 && plan.fraction <= 1.0)) throw DomainError("TrotterPlan: fraction must lie in (0, 1]");
  if (std::llround(plan.fraction * total_time / plan.dt) < 1) {
    throw DomainError("TrotterPlan: fraction * T / dt rounds to zero steps");
  }
}

std::vector<double> step_times(const TrotterPlan& plan, double total_time) {
  validate_plan(plan, total_time);
  const double t_end = plan.fraction * total_time;
  const long long r = std::llround(t_end / plan.dt);
  std::vector<double> times(static_cast<std::size_t>(r) + 1);
  for (long long k = 0; k < r; ++k) times[static_cast<std::size_t>(k)] = static_cast<double>(k) * plan.dt;
  times.back() = t_end;
  return times;
}

SplitSystem::SplitSystem(PauliSum h1, PauliSum h2) : h1_(std::move(h1)), h2_(std::move(h2)) {
  check_pair(h1_, h2_);
  h1_dense_ = to_dense(h1_);
  h2_dense_ = to_dense(h2_);
  h1_eigen_ = hermitian_eigen(h1_dense_);
  h2_eigen_ = hermitian_eigen(h2_dense_);
  h1_sparse_ = SparseOperator(h1_);
  h2_sparse_ = SparseOperator(h2_);
}

Matrix SplitSystem::hamiltonian(double u) const { return (1.0 - u) * h1_dense_ + u * h2_dense_; }

HermitianEigen SplitSystem::eigen_at(double u) const { return hermitian_eigen(hamiltonian(u)); }

SparseOperator SplitSystem::sparse_at(double u) const {
  return SparseOperator::combine(1.0 - u, h1_sparse_, u, h2_sparse_);
}

Vector SplitSystem::initial_state(const Schedule& sched) const {
  return eigen_at(sched.value(0.0)).vectors.col(0);
}

double SplitSystem::max_norm(const Schedule& sched, double t_end) const {
  // The norm is convex in u, so the extremes of u on [0, t_end] suffice.
  double lo = sched.value(0.0), hi = lo;
  const int samples = sched.kind() == RampKind::tabulated ? 1024 : 1;
  for (int i = 1; i <= samples; ++i) {
    const double u = sched.value(t_end * i / samples);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  return std::max(operator_norm(hamiltonian(lo)), operator_norm(hamiltonian(hi)));
}

void SplitSystem::apply_step(const Schedule& sched, double a, double b, int order, Ordering ordering,
                             Matrix& x) const {
  const bool h1_outer = ordering == Ordering::h1_first;
  const HermitianEigen& first = h1_outer ? h1_eigen_ : h2_eigen_;
  const HermitianEigen& second = h1_outer ? h2_eigen_ : h1_eigen_;
  auto weight = [h1_outer](const StepIntegrals& w, bool outer) {
    return (outer == h1_outer) ? w.w1 : w.w2;
  };
  if (order == 1) {
    const StepIntegrals w = sched.step_integrals(a, b);
    apply_expm(first, weight(w, true), x);
    apply_expm(second, weight(w, false), x);
    return;
  }
  const double m = 0.5 * (a + b);
  const StepIntegrals lo = sched.step_integrals(a, m);
  const StepIntegrals full = sched.step_integrals(a, b);
  const StepIntegrals hi = sched.step_integrals(m, b);
  apply_expm(first, weight(lo, true), x);
  apply_expm(second, weight(full, false), x);
  apply_expm(first, weight(hi, true), x);
}

void trotter_evolve(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan,
                    Matrix& x) {
  if (x.rows() != system.dim()) throw DimensionError("trotter_evolve: state dimension mismatch");
  const std::vector<double> times = step_times(plan, sched.total_time());
  for (std::size_t k = 1; k < times.size(); ++k) {
    system.apply_step(sched, times[k - 1], times[k], plan.order, plan.ordering, x);
  }
}

Matrix trotter_unitary(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan) {
  Matrix u = Matrix::Identity(system.dim(), system.dim());
  trotter_evolve(system, sched, plan, u);
  return u;
}

Matrix trotter_unitary(const PauliSum& h1, const PauliSum& h2, const Schedule& sched,
                       const TrotterPlan& plan) {
  return trotter_unitary(SplitSystem(h1, h2), sched, plan);
}

Vector trotter_state(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan,
                     const Vector& initial) {
  Matrix x = initial;
  trotter_evolve(system, sched, plan, x);
  return x.col(0);
}

Matrix exact_evolve(const SplitSystem& system, const Schedule& sched, double t_end, const Matrix& x0,
                    double tol) {
  if (x0.rows() != system.dim()) throw DimensionError("exact_evolve: state dimension mismatch");
  const double slack = 1e-12 * std::max(1.0, sched.total_time());
  if (!(t_end >= 0.0 && t_end <= sched.total_time() + slack)) {
    throw DomainError("exact_evolve: t_end must lie in [0, T]");
  }
  if (t_end == 0.0) return x0;
  const double bound = std::max(system.h1_sparse().norm_bound(), system.h2_sparse().norm_bound());
  const long base = std::max(1L, static_cast<long>(std::ceil(t_end * bound)));
  std::vector<Matrix> previous_row;
  Matrix previous_best;
  double previous_change = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= kMaxHalvings; ++level) {
    std::vector<Matrix> row;
    row.push_back(midpoint_product(system, sched, t_end, base << level, x0));
    const int columns = std::min(level, kMaxExtrapolationColumns);
    double factor = 1.0;
    for (int j = 1; j <= columns; ++j) {
      factor *= 4.0;
      row.push_back(row[j - 1] + (row[j - 1] - previous_row[j - 1]) / (factor - 1.0));
    }
    if (level > 0) {
      const double change = operator_norm(row.back() - previous_best);
      if (change < tol) return row.back();
      // full tableau and no progress: roundoff floor reached above tol
      if (level > kMaxExtrapolationColumns + 1 && change >= previous_change) {
        throw ConvergenceError("exact_evolve: refinement stalled at " + format_double(change) +
                               " above tolerance after " + std::to_string(level) + " halvings");
      }
      previous_change = change;
    }
    previous_best = row.back();
    previous_row = std::move(row);
  }
  throw ConvergenceError("exact_evolve: no convergence after 24 halvings");
}

Matrix exact_unitary(const SplitSystem& system, const Schedule& sched, double t_end, double tol) {
  return exact_evolve(system, sched, t_end, Matrix::Identity(system.dim(), system.dim()), tol);
}

Matrix exact_unitary(const PauliSum& h1, const PauliSum& h2, const Schedule& sched, double t_end,
                     double tol) {
  return exact_unitary(SplitSystem(h1, h2), sched, t_end, tol);
}

Vector exact_state(const SplitSystem& system, const Schedule& sched, double t_end,
                   const Vector& initial, double tol) {
  return exact_evolve(system, sched, t_end, initial, tol).col(0);
}

double infidelity(const Vector& prepared, const Vector& target) {
  if (prepared.size() != target.size()) throw DimensionError("infidelity: dimension mismatch");
  return std::clamp(1.0 - std::abs(target.dot(prepared)), 0.0, 1.0);
}

Matrix ground_space(const HermitianEigen& eig, double tol) {
  const double e0 = eig.values(0);
  Eigen::Index count = 1;
  while (count < eig.values.size() && eig.values(count) - e0 < tol) ++count;
  return eig.vectors.leftCols(count);
}

double ground_space_infidelity(const Vector& prepared, const Matrix& basis) {
  if (prepared.size() != basis.rows()) throw DimensionError("ground_space_infidelity: dimension mismatch");
  return std::clamp(1.0 - (basis.adjoint() * prepared).norm(), 0.0, 1.0);
}

bool is_convergent(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan) {
  return plan.dt * system.max_norm(sched, plan.fraction * sched.total_time()) < M_PI;
}

}  // namespace trotterlab
