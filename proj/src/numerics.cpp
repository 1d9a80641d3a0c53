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

#include "trotterlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

// Kronrod 15-point nodes (nonnegative half) and weights, with the embedded
// 7-point Gauss weights on the odd Kronrod nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

void gk15(const std::function<double(double)>& f, double a, double b, double& result, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    rk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
  }
  result = rk * h;
  err = std::abs((rk - rg) * h);
}

double integrate_rec(const std::function<double(double)>& f, double a, double b, double tol,
                     int depth) {
  double r = 0.0, e = 0.0;
  gk15(f, a, b, r, e);
  if (e <= tol || (b - a) <= 1e-15 * std::max(1.0, std::abs(a))) return r;
  if (depth <= 0) throw ConvergenceError("integrate: recursion depth exhausted");
  const double m = 0.5 * (a + b);
  return integrate_rec(f, a, m, 0.5 * tol, depth - 1) + integrate_rec(f, m, b, 0.5 * tol, depth - 1);
}

GaussRule build_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  auto legendre = [n](double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    p = n == 0 ? 1.0 : p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
  };
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, p, dp);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, abs_tol, max_depth);
  return integrate_rec(f, a, b, abs_tol, max_depth);
}

const GaussRule& gauss_legendre(int points) {
  if (points < 1 || points > 64) throw DomainError("gauss_legendre: points must be in [1, 64]");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, build_gauss(points)).first;
  return it->second;
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n == 0 || n != ys_.size()) throw DomainError("MonotoneCubic: need matching, nonempty knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(xs_[i] > xs_[i - 1])) throw DomainError("MonotoneCubic: knots must be strictly increasing");
  }
  slopes_.assign(n, 0.0);
  if (n == 1) return;
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      slopes_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // One-sided three-point end slopes, limited to preserve shape.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) {
      d = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3.0 * d0)) {
      d = 3.0 * d0;
    }
    return d;
  };
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, xs_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
  if (xs_.empty()) throw DomainError("MonotoneCubic: empty interpolant");
  if (xs_.size() == 1 || x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  if (xs_.size() < 2 || x < xs_.front() || x > xs_.back()) return 0.0;
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t;
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  return (d00 * ys_[i] + d01 * ys_[i + 1]) / h + d10 * slopes_[i] + d11 * slopes_[i + 1];
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw DomainError("log_grid: need 0 < lo <= hi and n >= 1");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1 || hi < lo) throw DomainError("linear_grid: need lo <= hi and n >= 1");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace trotterlab
