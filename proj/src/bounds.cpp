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

#include "trotterlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"
#include "trotterlab/numerics.hpp"

namespace trotterlab {

std::map<std::string, double> BoundReport::commutator_norms() const {
  return {{"[H1,H2]", comm}, {"[H1,[H1,H2]]", nested_h1}, {"[H2,[H2,H1]]", nested_h2}};
}

BoundReport coefficients(const PauliSum& h1, const PauliSum& h2) {
  if (h1.qubit_count() != h2.qubit_count()) throw DimensionError("coefficients: qubit-count mismatch");
  const Matrix a = to_dense(h1);
  const Matrix b = to_dense(h2);
  const Matrix ab = commutator(a, b);
  BoundReport r;
  r.norm_h1 = operator_norm(a);
  r.norm_h2 = operator_norm(b);
  r.comm = operator_norm(ab);
  r.nested_h1 = operator_norm(commutator(a, ab));
  r.nested_h2 = operator_norm(commutator(b, commutator(b, a)));
  r.c1 = std::min(r.norm_h1, r.norm_h2);
  r.c2 = 0.25 * r.comm * r.comm;
  const double s_min = std::min(r.nested_h1, r.nested_h2);
  const double s_max = std::max(r.nested_h1, r.nested_h2);
  r.c3 = (s_min + 0.5 * s_max) / 12.0;
  return r;
}

double theorem1_infidelity_bound(const BoundReport& report, double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("theorem1_infidelity_bound: T and dt must be positive");
  const double a = report.c2 * T * T * dt * dt;
  const double s = report.c1 * dt + report.c3 * T * dt * dt;
  return std::min({a, s * s, 2.0});
}

LemmaBounds lemma_bounds(const BoundReport& report, double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw DomainError("lemma_bounds: T and dt must be positive");
  return {report.comm * T * dt, (0.5 * report.nested_h1 + report.nested_h2) * T * dt * dt / 12.0};
}

std::string format_bound_report(const BoundReport& report, double T, double dt) {
  const LemmaBounds lb = lemma_bounds(report, T, dt);
  std::ostringstream out;
  out << "norm_h1 = " << format_double(report.norm_h1) << '\n'
      << "norm_h2 = " << format_double(report.norm_h2) << '\n'
      << "comm_h1_h2 = " << format_double(report.comm) << '\n'
      << "nested_h1_h1_h2 = " << format_double(report.nested_h1) << '\n'
      << "nested_h2_h2_h1 = " << format_double(report.nested_h2) << '\n'
      << "c1 = " << format_double(report.c1) << '\n'
      << "c2 = " << format_double(report.c2) << '\n'
      << "c3 = " << format_double(report.c3) << '\n'
      << "T = " << format_double(T) << '\n'
      << "dt = " << format_double(dt) << '\n'
      << "lemma1_bound = " << format_double(lb.first_order) << '\n'
      << "lemma3_bound = " << format_double(lb.second_order) << '\n'
      << "theorem1_bound = " << format_double(theorem1_infidelity_bound(report, T, dt)) << '\n'
      << "theorem1_additive_terms = O(dt) + O(T^-2), gap-dependent prefactors not evaluated\n";
  return out.str();
}

namespace {

constexpr double kKuboTol = 1e-10;
constexpr int kKuboMaxRefinements = 20;
constexpr int kGaussPoints = 8;
// Magnus step length times max ||A|| on the interval.
constexpr double kMagnusScale = 0.01;

class OrderedExponential {
 public:
  OrderedExponential(const Matrix& slope, const Matrix& offset, double h_max)
      : slope_(slope), offset_(offset), h_max_(h_max) {}

  Matrix a_at(double t) const { return offset_ + t * slope_; }

  /// Right-multiplies l by the ordered factor over [s0, s1].
  void advance(Matrix& l, double s0, double s1) const {
    if (s1 <= s0) return;
    const int steps = std::max(1, static_cast<int>(std::ceil((s1 - s0) / h_max_)));
    const double h = (s1 - s0) / steps;
    const double c = std::sqrt(3.0) / 6.0;
    const Complex i(0.0, 1.0);
    for (int k = 0; k < steps; ++k) {
      const double s = s0 + k * h;
      const Matrix a1 = a_at(s + (0.5 - c) * h);
      const Matrix a2 = a_at(s + (0.5 + c) * h);
      Matrix gen = 0.5 * h * (a1 + a2) - i * (std::sqrt(3.0) / 12.0 * h * h) * (a2 * a1 - a1 * a2);
      gen = 0.5 * (gen + gen.adjoint());
      l = l * expm_hermitian(gen, -1.0);
    }
  }

 private:
  Matrix slope_, offset_;
  double h_max_;
};

}  // namespace

double kubo_residual(const Matrix& a_slope, const Matrix& a_offset, const Matrix& b, double t0, double t1) {
  const Eigen::Index d = a_slope.rows();
  if (a_slope.cols() != d || a_offset.rows() != d || a_offset.cols() != d || b.rows() != d || b.cols() != d) {
    throw DimensionError("kubo_residual: operands must share one square shape");
  }
  if (!is_hermitian(a_slope, 1e-10) || !is_hermitian(a_offset, 1e-10)) {
    throw ValidityError("kubo_residual: A(t) must be Hermitian");
  }
  if (t1 < t0) throw DomainError("kubo_residual: need t0 <= t1");
  if (t1 == t0) return 0.0;

  const double a_max = std::max(operator_norm(a_offset + t0 * a_slope), operator_norm(a_offset + t1 * a_slope));
  const double h_max = a_max > 0.0 ? kMagnusScale / a_max : (t1 - t0);
  const OrderedExponential ordered(a_slope, a_offset, h_max);
  const Complex i(0.0, 1.0);
  const GaussRule& rule = gauss_legendre(kGaussPoints);

  // Returns the right-hand side and stores E = L(t1) in e_out.
  auto integrate_panels = [&](int panels, Matrix& e_out) {
    const double width = (t1 - t0) / panels;
    Matrix sum = Matrix::Zero(d, d);
    Matrix l_start = Matrix::Identity(d, d);
    for (int p = 0; p < panels; ++p) {
      const double lo = t0 + p * width;
      const double hi = (p + 1 == panels) ? t1 : lo + width;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[q];
        Matrix l = l_start;
        ordered.advance(l, lo, s);
        const Matrix as = ordered.a_at(s);
        sum += (0.5 * (hi - lo) * rule.weights[q]) * (l * (i * (as * b - b * as)) * l.adjoint());
      }
      ordered.advance(l_start, lo, hi);
    }
    e_out = l_start;
    return Matrix(sum * e_out);
  };

  Matrix e;
  Matrix previous = integrate_panels(1, e);
  for (int level = 1; level <= kKuboMaxRefinements; ++level) {
    Matrix current = integrate_panels(1 << level, e);
    if (operator_norm(current - previous) < kKuboTol) {
      return operator_norm((e * b - b * e) - current);
    }
    previous = std::move(current);
  }
  throw ConvergenceError("kubo_residual: quadrature did not converge");
}

StepCounts step_counts(double epsilon, int p) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("step_counts: epsilon must lie in (0, 1)");
  if (p < 1) throw DomainError("step_counts: order p must be positive");
  StepCounts c;
  c.r_selfhealing = std::pow(epsilon, -0.5);
  c.ratio = std::pow(epsilon, -1.0 / p);
  c.r_generic = c.r_selfhealing * c.ratio;
  return c;
}

}  // namespace trotterlab
