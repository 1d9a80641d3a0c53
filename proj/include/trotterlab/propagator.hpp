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

#ifndef TROTTERLAB_PROPAGATOR_HPP
#define TROTTERLAB_PROPAGATOR_HPP

#include <string>
#include <vector>

#include "trotterlab/linalg.hpp"
#include "trotterlab/pauli.hpp"
#include "trotterlab/schedule.hpp"

namespace trotterlab {

/// Which factor of a first-order step acts first on the state.
enum class Ordering { h1_first, h2_first };

std::string to_string(Ordering ordering);
Ordering ordering_from_string(const std::string& name);

struct TrotterPlan {
  int order = 1;                      // 1 or 2
  double dt = 0.1;                    // nominal step
  Ordering ordering = Ordering::h1_first;
  double fraction = 1.0;              // evolve to t = fraction * T
};

/// Throws DomainError unless order in {1,2}, dt > 0, fraction in (0, 1], r >= 1.
void validate_plan(const TrotterPlan& plan, double total_time);

/// Boundaries t_0 = 0 < t_1 < ... < t_r = f*T with r = round(f*T/dt); all steps
/// have length dt except the last, which takes the remainder.
std::vector<double> step_times(const TrotterPlan& plan, double total_time);

/// H(u) = (1 - u) H1 + u H2 with cached dense, spectral and matrix-free forms.
class SplitSystem {
 public:
  SplitSystem(PauliSum h1, PauliSum h2);

  std::size_t qubit_count() const { return h1_.qubit_count(); }
  Eigen::Index dim() const { return h1_dense_.rows(); }

  const PauliSum& h1() const { return h1_; }
  const PauliSum& h2() const { return h2_; }
  const Matrix& h1_dense() const { return h1_dense_; }
  const Matrix& h2_dense() const { return h2_dense_; }
  const HermitianEigen& h1_eigen() const { return h1_eigen_; }
  const HermitianEigen& h2_eigen() const { return h2_eigen_; }
  const SparseOperator& h1_sparse() const { return h1_sparse_; }
  const SparseOperator& h2_sparse() const { return h2_sparse_; }

  Matrix hamiltonian(double u) const;
  HermitianEigen eigen_at(double u) const;
  SparseOperator sparse_at(double u) const;

  /// Ground state of H(u(0)).
  Vector initial_state(const Schedule& sched) const;

  /// max ||H(u(t))|| over t in [0, t_end].
  double max_norm(const Schedule& sched, double t_end) const;

  /// One product-formula step over [a, b] applied to the columns of x.
  void apply_step(const Schedule& sched, double a, double b, int order, Ordering ordering,
                  Matrix& x) const;

 private:
  PauliSum h1_, h2_;
  Matrix h1_dense_, h2_dense_;
  HermitianEigen h1_eigen_, h2_eigen_;
  SparseOperator h1_sparse_, h2_sparse_;
};

/// Applies the digitized evolution of `plan` to the columns of x.
void trotter_evolve(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan,
                    Matrix& x);

Matrix trotter_unitary(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan);
Matrix trotter_unitary(const PauliSum& h1, const PauliSum& h2, const Schedule& sched,
                       const TrotterPlan& plan);
Vector trotter_state(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan,
                     const Vector& initial);

/// Time-ordered evolution of the columns of x0 to t_end: midpoint exponentials
/// with step halving and Richardson extrapolation until successive estimates
/// differ by less than tol (operator norm). Throws ConvergenceError after 24 halvings.
Matrix exact_evolve(const SplitSystem& system, const Schedule& sched, double t_end, const Matrix& x0,
                    double tol = 1e-10);
Matrix exact_unitary(const SplitSystem& system, const Schedule& sched, double t_end,
                     double tol = 1e-10);
Matrix exact_unitary(const PauliSum& h1, const PauliSum& h2, const Schedule& sched, double t_end,
                     double tol = 1e-10);
Vector exact_state(const SplitSystem& system, const Schedule& sched, double t_end,
                   const Vector& initial, double tol = 1e-10);

/// 1 - |<target|prepared>|.
double infidelity(const Vector& prepared, const Vector& target);

/// Orthonormal basis of the lowest eigenspace (eigenvalues within tol of the minimum).
Matrix ground_space(const HermitianEigen& eig, double tol = 1e-9);
/// 1 - ||P psi|| with P the projector onto span(basis); equals infidelity() for one vector.
double ground_space_infidelity(const Vector& prepared, const Matrix& basis);

/// True when dt * max_t ||H(u(t))|| < pi.
bool is_convergent(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan);

}  // namespace trotterlab

#endif  // TROTTERLAB_PROPAGATOR_HPP
