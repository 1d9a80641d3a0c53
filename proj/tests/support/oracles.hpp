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

// Independent reference implementations used by the tests.

#ifndef TROTTERLAB_TESTS_ORACLES_HPP
#define TROTTERLAB_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M pauli(char c) {
  M p(2, 2);
  switch (c) {
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: p << 1, 0, 0, 1; break;
  }
  return p;
}

/// Kronecker product with qubit 0 as the leftmost factor.
inline M word(const std::string& w) {
  M out = M::Identity(1, 1);
  for (char c : w) {
    M next = Eigen::kroneckerProduct(out, pauli(c)).eval();
    out = next;
  }
  return out;
}

inline M sum(const std::vector<std::pair<double, std::string>>& terms) {
  M out = M::Zero(1 << terms.front().second.size(), 1 << terms.front().second.size());
  for (const auto& [c, w] : terms) out += c * word(w);
  return out;
}

inline M expm(const M& a) { return a.exp(); }

inline double opnorm(const M& a) {
  Eigen::JacobiSVD<M> svd(a);
  return svd.singularValues()(0);
}

/// psi(t_end) for i dpsi/dt = H(t) psi by classical RK4 with n steps.
inline V rk4(const std::function<M(double)>& h, V psi, double t0, double t1, long n) {
  const double dt = (t1 - t0) / static_cast<double>(n);
  const C mi(0, -1);
  for (long k = 0; k < n; ++k) {
    const double t = t0 + dt * static_cast<double>(k);
    const M h0 = h(t), hm = h(t + 0.5 * dt), h1 = h(t + dt);
    const V k1 = mi * (h0 * psi);
    const V k2 = mi * (hm * (psi + 0.5 * dt * k1));
    const V k3 = mi * (hm * (psi + 0.5 * dt * k2));
    const V k4 = mi * (h1 * (psi + dt * k3));
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

/// Random Hermitian matrix with entries ~ N(0, 1).
inline M random_hermitian(std::mt19937& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  M a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = C(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

/// Ground vector of a Hermitian matrix by self-adjoint eigensolver.
inline V ground(const M& h) {
  Eigen::SelfAdjointEigenSolver<M> es(h);
  return es.eigenvectors().col(0);
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace oracle

#endif  // TROTTERLAB_TESTS_ORACLES_HPP
