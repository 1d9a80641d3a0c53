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

#include "trotterlab/linalg.hpp"

#include <cmath>

#include "trotterlab/errors.hpp"

namespace trotterlab {

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianEigen hermitian_eigen(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
  if (h.size() > 0 && !is_hermitian(h, tol)) {
    throw ValidityError("hermitian_eigen: matrix is not Hermitian");
  }
  Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw ConvergenceError("hermitian_eigen: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && is_hermitian(m, 1e-12)) {
    Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("commutator: shape mismatch");
  return a * b - b * a;
}

Matrix expm_from_eigen(const HermitianEigen& eig, double angle) {
  Vector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    phases(k) = std::polar(1.0, -angle * eig.values(k));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Matrix expm_hermitian(const Matrix& h, double angle) {
  return expm_from_eigen(hermitian_eigen(h, 1e-10), angle);
}

void apply_expm(const HermitianEigen& eig, double angle, Matrix& x) {
  Vector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    phases(k) = std::polar(1.0, -angle * eig.values(k));
  }
  Matrix y = eig.vectors.adjoint() * x;
  y = phases.asDiagonal() * y;
  x.noalias() = eig.vectors * y;
}

}  // namespace trotterlab
