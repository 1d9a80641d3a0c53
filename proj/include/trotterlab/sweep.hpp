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

#ifndef TROTTERLAB_SWEEP_HPP
#define TROTTERLAB_SWEEP_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trotterlab/pauli.hpp"
#include "trotterlab/propagator.hpp"
#include "trotterlab/schedule.hpp"

namespace trotterlab {

enum class TargetKind { instantaneous_ground, exact_evolved };

std::string to_string(TargetKind kind);
TargetKind target_kind_from_string(const std::string& name);

struct SweepSpec {
  PauliSum h1;
  PauliSum h2;
  RampKind ramp = RampKind::linear;
  std::vector<double> table_x;  // tabulated ramps only
  std::vector<double> table_u;
  std::vector<double> dt_grid;
  std::vector<double> T_grid;
  std::vector<double> fractions{1.0};
  std::vector<Ordering> orderings{Ordering::h1_first};
  int order = 1;
  TargetKind target = TargetKind::instantaneous_ground;
  /// Operator-norm error needs the exact unitary; computed only for n <= 6.
  bool with_operator_error = true;
  double exact_tol = 1e-10;
  /// 0 means all available cores.
  int threads = 0;
};

/// Throws DomainError for empty grids, dt >= T, or fractions outside (0, 1].
void validate_sweep(const SweepSpec& spec);
std::size_t sweep_point_count(const SweepSpec& spec);
Schedule make_schedule(const SweepSpec& spec, double T);

struct SweepRecord {
  double dt = 0.0;
  double T = 0.0;
  double fraction = 1.0;
  Ordering ordering = Ordering::h1_first;
  double infidelity = 0.0;  // NaN marks a failed grid point
  std::optional<double> op_norm_error;
  double lemma1_bound = 0.0;
  double theorem1_bound = 0.0;
  bool convergent = true;
  std::string error;  // not serialized

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

/// One record per grid point, ordered by (T, dt, fraction, ordering).
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const ProgressCallback& progress = {});

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
};

/// Least squares of log y on log x over points with lo <= x <= hi.
/// Throws InsufficientDataError with fewer than 4 points, DomainError for nonpositive data.
PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi);

inline constexpr const char* kSweepCsvHeader =
    "dt,T,fraction,ordering,infidelity,op_norm_error,lemma1_bound,theorem1_bound,convergent";

std::string sweep_csv(const std::vector<SweepRecord>& records);
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> parse_sweep_csv(std::istream& in);
std::vector<SweepRecord> load_sweep_csv(const std::string& path);

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware concurrency).
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace trotterlab

#endif  // TROTTERLAB_SWEEP_HPP
