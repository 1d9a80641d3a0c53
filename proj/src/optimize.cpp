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

#include "trotterlab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void project(Vec& x, const Vec& lo, const Vec& hi) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

Vec projected_gradient(const Vec& x, const Vec& g, const Vec& lo, const Vec& hi) {
  Vec pg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) pg[i] = std::clamp(x[i] - g[i], lo[i], hi[i]) - x[i];
  return pg;
}

struct Pair {
  Vec s, y;
  double rho;
};

// Two-loop recursion for -H g.
Vec lbfgs_direction(const std::deque<Pair>& memory, const Vec& g) {
  Vec q = g;
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    alpha[k] = memory[k].rho * dot(memory[k].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * memory[k].y[i];
  }
  if (!memory.empty()) {
    const Pair& last = memory.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const double beta = memory[k].rho * dot(memory[k].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += memory[k].s[i] * (alpha[k] - beta);
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

OptimizeResult minimize_bounded(const Objective& f, Vec x, const Vec& lower, const Vec& upper,
                                const QuasiNewtonConfig& config) {
  const std::size_t n = x.size();
  if (lower.size() != n || upper.size() != n) throw DimensionError("minimize_bounded: bound sizes differ from x");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i])) throw DomainError("minimize_bounded: lower bound exceeds upper bound");
  }
  project(x, lower, upper);

  OptimizeResult result;
  Vec g(n);
  double fx = f(x, &g);
  result.evaluations = 1;
  if (!std::isfinite(fx)) throw OptimizationError("minimize_bounded: non-finite objective at the start point");

  std::deque<Pair> memory;
  Vec trial(n), g_trial(n);
  for (;;) {
    const Vec pg = projected_gradient(x, g, lower, upper);
    result.projected_gradient = max_abs(pg);
    if (result.projected_gradient < config.pgtol) {
      result.converged = true;
      result.reason = "projected gradient below tolerance";
      break;
    }
    if (result.iterations >= config.max_iterations) {
      result.reason = "iteration limit";
      break;
    }

    // Variables pinned at a bound with the gradient pointing outward stay fixed.
    std::vector<bool> active(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      active[i] = (x[i] <= lower[i] && g[i] > 0.0) || (x[i] >= upper[i] && g[i] < 0.0);
    }
    auto masked = [&](Vec d) {
      for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) d[i] = 0.0;
      }
      return d;
    };
    Vec d = masked(lbfgs_direction(memory, g));
    if (!(dot(d, g) < 0.0)) {
      memory.clear();
      d = masked(lbfgs_direction(memory, g));
    }

    double step = memory.empty() ? std::min(1.0, 1.0 / std::max(max_abs(d), 1e-300)) : 1.0;
    bool accepted = false;
    double f_trial = fx;
    for (int tries = 0; tries < config.max_backtracks; ++tries) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * d[i];
      project(trial, lower, upper);
      Vec delta(n);
      for (std::size_t i = 0; i < n; ++i) delta[i] = trial[i] - x[i];
      const double decrease = dot(g, delta);
      if (max_abs(delta) == 0.0) break;
      f_trial = f(trial, &g_trial);
      ++result.evaluations;
      if (std::isfinite(f_trial) && f_trial <= fx + config.armijo_c1 * decrease) {
        accepted = true;
        break;
      }
      step *= config.backtrack;
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();
        continue;
      }
      result.reason = "line search made no progress";
      break;
    }

    Pair p{Vec(n), Vec(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      p.s[i] = trial[i] - x[i];
      p.y[i] = g_trial[i] - g[i];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-12 * std::sqrt(dot(p.s, p.s) * dot(p.y, p.y)) && sy > 0.0) {
      p.rho = 1.0 / sy;
      memory.push_back(std::move(p));
      if (static_cast<int>(memory.size()) > config.memory) memory.pop_front();
    }

    const double f_prev = fx;
    x = trial;
    g = g_trial;
    fx = f_trial;
    ++result.iterations;
    if (f_prev - fx <= config.ftol * std::max({std::abs(f_prev), std::abs(fx), 1.0})) {
      result.projected_gradient = max_abs(projected_gradient(x, g, lower, upper));
      result.converged = result.projected_gradient < config.pgtol;
      result.reason = "relative decrease below ftol";
      break;
    }
  }
  result.x = std::move(x);
  result.value = fx;
  return result;
}

Objective with_finite_difference_gradient(std::function<double(const Vec&)> f, double step, const Vec& lower,
                                          const Vec& upper) {
  return [f = std::move(f), step, lower, upper](const Vec& x, Vec* grad) {
    const double value = f(x);
    if (grad) {
      grad->assign(x.size(), 0.0);
      Vec probe = x;
      for (std::size_t i = 0; i < x.size(); ++i) {
        // One-sided at a bound so every probe stays feasible.
        const double hi = std::min(x[i] + step, upper[i]);
        const double lo = std::max(x[i] - step, lower[i]);
        if (hi <= lo) continue;
        probe[i] = hi;
        const double f_hi = f(probe);
        probe[i] = lo;
        const double f_lo = f(probe);
        probe[i] = x[i];
        (*grad)[i] = (f_hi - f_lo) / (hi - lo);
      }
    }
    return value;
  };
}

}  // namespace trotterlab
