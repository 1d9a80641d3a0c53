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

#ifndef TROTTERLAB_OPTIMIZE_HPP
#define TROTTERLAB_OPTIMIZE_HPP

#include <functional>
#include <string>
#include <vector>

namespace trotterlab {

/// Projected limited-memory quasi-Newton settings.
struct QuasiNewtonConfig {
  int memory = 10;
  double pgtol = 1e-7;          // projected-gradient max-norm
  int max_iterations = 2000;
  double ftol = 1e-13;          // relative decrease per iteration
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
};

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  double projected_gradient = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string reason;
};

/// Returns f(x) and writes the gradient into *grad when non-null.
using Objective = std::function<double(const std::vector<double>& x, std::vector<double>* grad)>;

/// Minimizes f over the box [lower, upper]. Throws OptimizationError on a
/// non-finite value at the start point.
OptimizeResult minimize_bounded(const Objective& f, std::vector<double> x0, const std::vector<double>& lower,
                                const std::vector<double>& upper, const QuasiNewtonConfig& config = {});

/// Central-difference gradient of a value-only function.
Objective with_finite_difference_gradient(std::function<double(const std::vector<double>&)> f, double step,
                                          const std::vector<double>& lower, const std::vector<double>& upper);

}  // namespace trotterlab

#endif  // TROTTERLAB_OPTIMIZE_HPP
