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

#ifndef TROTTERLAB_QAOA_HPP
#define TROTTERLAB_QAOA_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "trotterlab/linalg.hpp"
#include "trotterlab/optimize.hpp"
#include "trotterlab/pauli.hpp"

namespace trotterlab {

/// Layer angles: gammas act with the problem Hamiltonian, betas with the driver.
struct QaoaAngles {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t depth() const { return gammas.size(); }
  /// Throws DomainError on unequal lengths, zero depth or non-finite entries.
  void validate() const;
  double total_time() const;
};

struct MaxcutInstance {
  PauliSum problem;  // sum of Z_i Z_j over edges
  PauliSum driver;   // sum of X_i
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Ring (regularity 2) or ring plus antipodal chords (regularity 3).
/// Throws ConstructionError for n < 3, odd n with regularity 3, or other regularities.
MaxcutInstance maxcut_hamiltonian(std::size_t n, int regularity, bool periodic = true);

/// prod_m exp(-i beta_m H_d) exp(-i gamma_m H_p) applied to the ground state of H_d.
Vector qaoa_state(const PauliSum& h_p, const PauliSum& h_d, const QaoaAngles& angles);
double qaoa_expectation(const PauliSum& h_p, const PauliSum& h_d, const QaoaAngles& angles);

struct QaoaOptions {
  QuasiNewtonConfig config{10, 1e-8, 500, 1e-13, 1e-4, 0.5, 40};
  double fd_step = 1e-6;
  /// Impose gamma_m + beta_m = pair_total (optimize gamma_m in [0, pair_total]).
  bool fixed_pair_total = false;
  double pair_total = 1.1;
  /// Extra starts from seeded random perturbations of the seed.
  unsigned rng_seed = 12345;
  double restart_spread = 0.1;
};

/// Local minimum of qaoa_expectation from `seed` (angles >= 0). Throws OptimizationError
/// on a non-finite objective.
QaoaAngles optimize_qaoa(const PauliSum& h_p, const PauliSum& h_d, const QaoaAngles& seed, int restarts = 0,
                         const QaoaOptions& options = {});

/// Resamples gammas and betas, viewed as functions of m/(P+1), at new_depth points.
QaoaAngles bootstrap_angles(const QaoaAngles& prev, std::size_t new_depth);

/// Piecewise-constant control u_k on bins of width dt_bin.
struct AnnealCurve {
  double dt_bin = 0.01;
  std::vector<double> values;
  bool lock_first = true;
  bool lock_last = true;

  std::size_t bins() const { return values.size(); }
  double total_time() const { return dt_bin * static_cast<double>(values.size()); }
  /// Throws DomainError unless dt_bin > 0, nonempty and all values in [0, 1].
  void validate() const;
};

/// H[u] = H1 + (H2 - H1) u started from the ground state of H1; J = <Psi(T)|H2|Psi(T)>.
struct ControlProblem {
  PauliSum h1;
  PauliSum h2;
  Vector initial_state;

  static ControlProblem make(PauliSum h1, PauliSum h2);
};

enum class GradientForm {
  exact,        // derivative of the discretized objective
  first_order,  // 2 dt Im<lambda_k|(H2 - H1)|Psi_k>
};

/// Final state of the piecewise-constant evolution.
Vector control_state(const ControlProblem& problem, const AnnealCurve& curve);
double control_objective(const ControlProblem& problem, const AnnealCurve& curve);
/// dJ/du_k for every bin, locked ones included.
std::vector<double> control_gradient(const ControlProblem& problem, const AnnealCurve& curve,
                                     GradientForm form = GradientForm::exact);

struct CurveOptions {
  QuasiNewtonConfig config{10, 1e-7, 2000, 1e-13, 1e-4, 0.5, 40};
  GradientForm gradient = GradientForm::exact;
};

/// Bound-constrained minimization of J over the unlocked bins.
AnnealCurve optimize_curve(const ControlProblem& problem, const AnnealCurve& seed, const CurveOptions& options = {},
                           OptimizeResult* report = nullptr);

/// Monotone-cubic interpolation of s_m = gamma_m/(gamma_m+beta_m) onto bins of width ~fine_dt
/// spanning T = sum(gamma_m + beta_m), with the first bin locked at 1 and the last at 0.
AnnealCurve seed_from_qaoa(const QaoaAngles& angles, double fine_dt = 0.01);

/// Fixed-step digitization: first and last steps use the bin-averaged curve, middle steps the
/// value at the start of their bin; gamma = u * len, beta = (1 - u) * len.
QaoaAngles trotterize_curve(const AnnealCurve& curve, double step);

/// CSV "m,gamma,beta" with m starting at 1.
void save_angles_csv(const std::string& path, const QaoaAngles& angles);
QaoaAngles load_angles_csv(const std::string& path);
/// Curve as tabulated ramp CSV "t_norm,u" at bin centres.
void save_curve_csv(const std::string& path, const AnnealCurve& curve);

struct PipelineConfig {
  std::size_t n = 6;
  int regularity = 2;
  bool periodic = true;
  int p_min = 6;
  int p_max = 12;
  double fine_dt = 0.01;
  /// Pairwise total for the 2-regular reparameterization; <= 0 disables it.
  double pair_total = 1.1;
  int restarts = 0;
  QaoaOptions qaoa;
  CurveOptions curve;
};

struct PipelineRow {
  int P = 0;
  double T_total = 0.0;
  double J_qaoa = 0.0;
  double J_curve = 0.0;
  double infid_qaoa = 0.0;
  double infid_curve = 0.0;
  double infid_trotterized = 0.0;
};

struct PipelineLevel {
  PipelineRow row;
  QaoaAngles angles;
  AnnealCurve curve;
  QaoaAngles trotterized;
};

inline constexpr const char* kPipelineCsvHeader = "P,T_total,J_qaoa,J_curve,infid_qaoa,infid_curve,infid_trotterized";

/// Seed angles for the bottom of the bootstrap ladder (depth 2).
QaoaAngles ladder_seed(int regularity, double pair_total);

/// Bootstrap ladder from depth 2 to p_max; levels with P >= p_min are returned.
/// Throws OptimizationError naming the failing depth.
std::vector<PipelineLevel> run_pipeline(const PipelineConfig& config,
                                        const std::function<void(const PipelineLevel&)>& on_level = {});

std::string pipeline_csv(const std::vector<PipelineRow>& rows);
std::vector<PipelineRow> parse_pipeline_csv(std::istream& in);

}  // namespace trotterlab

#endif  // TROTTERLAB_QAOA_HPP
