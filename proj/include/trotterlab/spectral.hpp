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

#ifndef TROTTERLAB_SPECTRAL_HPP
#define TROTTERLAB_SPECTRAL_HPP

#include <string>
#include <vector>

#include "trotterlab/propagator.hpp"

namespace trotterlab {

/// Instantaneous eigensystem of H(u), energies ascending.
struct EigenFrame {
  double u = 0.0;
  RealVector energies;
  Matrix vectors;
};

inline constexpr double kDegeneracyTol = 1e-9;

/// Frame at one u without gauge alignment.
EigenFrame eigenframe(const SplitSystem& system, double u);

/// Rotates `next` so that <prev_i|next_i> is real and nonnegative; inside
/// degenerate clusters the subspace is rotated to maximize overlap with `prev`.
void align_gauge(const EigenFrame& prev, EigenFrame& next, double degeneracy_tol = kDegeneracyTol);

/// Gauge-tracked frames along sorted u samples.
std::vector<EigenFrame> eigenframe_path(const SplitSystem& system, const std::vector<double>& u_samples);
std::vector<EigenFrame> eigenframe_path(const PauliSum& h1, const PauliSum& h2,
                                        const std::vector<double>& u_samples);

/// Smallest E_1 - E_0 over a u grid, and where it occurs.
struct GapMinimum {
  double gap = 0.0;
  double u = 0.0;
};
GapMinimum minimum_gap(const SplitSystem& system, int samples = 2001);

/// Overlaps B_i(t) = <phi_i(u(t))|psi(t)> at every step boundary.
struct PopulationTrace {
  std::vector<double> times;
  std::vector<double> u;
  Eigen::MatrixXd populations;  // row per sample
  Matrix overlaps;              // row per sample
};

PopulationTrace population_trace(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan);
PopulationTrace population_trace(const PauliSum& h1, const PauliSum& h2, const Schedule& sched,
                                 const TrotterPlan& plan);

/// Header "t,u,pop_0,...,pop_{d-1}".
void write_population_csv(const PopulationTrace& trace, const std::string& path);

/// max_t (1 - |B_0(t)|) and the final value 1 - |B_0(t_end)|.
struct GroundDeficit {
  double max_deficit = 0.0;
  double max_at_time = 0.0;
  double final_deficit = 0.0;
};
GroundDeficit ground_deficit(const PopulationTrace& trace);

/// Coupling matrices of one frozen-u first-order step U = e^{-i dt u H2} e^{-i dt (1-u) H1}
/// at time t, expressed in the instantaneous eigenbasis. Eigenvector derivatives in
/// u by gauge-fixed central differences (step 1e-5).
struct CouplingDiagnostics {
  Matrix R;
  Matrix S;
  Matrix Q;
};
CouplingDiagnostics coupling_diagnostics(const SplitSystem& system, const Schedule& sched, double dt,
                                         double t);

}  // namespace trotterlab

#endif  // TROTTERLAB_SPECTRAL_HPP
