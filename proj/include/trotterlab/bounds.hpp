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

#ifndef TROTTERLAB_BOUNDS_HPP
#define TROTTERLAB_BOUNDS_HPP

#include <map>
#include <string>

#include "trotterlab/linalg.hpp"
#include "trotterlab/pauli.hpp"

namespace trotterlab {

/// Norms and coefficients entering the Trotter-error bounds for a pair (H1, H2).
struct BoundReport {
  double norm_h1 = 0.0;
  double norm_h2 = 0.0;
  double comm = 0.0;       // ||[H1,H2]||
  double nested_h1 = 0.0;  // ||[H1,[H1,H2]]||
  double nested_h2 = 0.0;  // ||[H2,[H2,H1]]||
  double c1 = 0.0;         // min(||H1||, ||H2||)
  double c2 = 0.0;         // ||[H1,H2]||^2 / 4
  double c3 = 0.0;         // (min S + max S / 2) / 12 over the nested pair S

  std::map<std::string, double> commutator_norms() const;
};

BoundReport coefficients(const PauliSum& h1, const PauliSum& h2);

/// min(c2 T^2 dt^2, (c1 dt + c3 T dt^2)^2, 2).
double theorem1_infidelity_bound(const BoundReport& report, double T, double dt);

struct LemmaBounds {
  double first_order = 0.0;   // ||[H1,H2]|| T dt
  double second_order = 0.0;  // (||[H1,[H1,H2]]||/2 + ||[H2,[H2,H1]]||) T dt^2 / 12
};
LemmaBounds lemma_bounds(const BoundReport& report, double T, double dt);

/// Flat "key = value" block including the bound values at (T, dt) and the
/// unevaluated gap-dependent terms.
std::string format_bound_report(const BoundReport& report, double T, double dt);

/// Operator-norm residual of the commutator identity
///   [E, B] = int_{t0}^{t1} ds L(s) [iA(s), B] L(s)^dag E,
/// where A(t) = a_offset + t a_slope, L solves dL/ds = L iA(s) with L(t0) = I,
/// and E = L(t1) is the ordered exponential of i int A. Ordered exponentials use
/// fourth-order Magnus steps; the s-integral uses composite Gauss-Legendre panels
/// refined until successive estimates agree to 1e-10.
double kubo_residual(const Matrix& a_slope, const Matrix& a_offset, const Matrix& b, double t0, double t1);

/// Scaling-model step counts with unit prefactors:
/// r = eps^{-1/2} (self-healing) and r' = eps^{-1/2 - 1/p} (generic order-p bound).
struct StepCounts {
  double r_selfhealing = 0.0;
  double r_generic = 0.0;
  double ratio = 0.0;  // r'/r = eps^{-1/p}
};
StepCounts step_counts(double epsilon, int p);

}  // namespace trotterlab

#endif  // TROTTERLAB_BOUNDS_HPP
