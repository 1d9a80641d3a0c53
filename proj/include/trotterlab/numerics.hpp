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

#ifndef TROTTERLAB_NUMERICS_HPP
#define TROTTERLAB_NUMERICS_HPP

#include <functional>
#include <vector>

namespace trotterlab {

/// Adaptive Gauss-Kronrod (7/15) quadrature to an absolute tolerance.
/// Throws ConvergenceError when the recursion depth is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_depth = 40);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int points);

/// Shape-preserving piecewise cubic (Fritsch-Carlson derivatives),
/// constant extrapolation beyond the first and last knots.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  double derivative(double x) const;
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> slopes_;
};

/// n points log-spaced between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);
/// n points evenly spaced between lo and hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace trotterlab

#endif  // TROTTERLAB_NUMERICS_HPP
