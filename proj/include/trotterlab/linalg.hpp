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

#ifndef TROTTERLAB_LINALG_HPP
#define TROTTERLAB_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace trotterlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix, values ascending.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};

bool is_hermitian(const Matrix& m, double tol);

/// Throws ValidityError when `h` is not Hermitian within `tol`.
HermitianEigen hermitian_eigen(const Matrix& h, double tol = 1e-10);

/// Largest singular value; Hermitian inputs use the eigensolver.
double operator_norm(const Matrix& m);

Matrix commutator(const Matrix& a, const Matrix& b);

/// exp(-i * angle * h) for Hermitian h.
Matrix expm_hermitian(const Matrix& h, double angle);

/// exp(-i * angle * H) from a stored decomposition of H.
Matrix expm_from_eigen(const HermitianEigen& eig, double angle);

/// x <- exp(-i * angle * H) x, column-wise.
void apply_expm(const HermitianEigen& eig, double angle, Matrix& x);

}  // namespace trotterlab

#endif  // TROTTERLAB_LINALG_HPP
