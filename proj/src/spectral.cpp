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

#include "trotterlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

constexpr double kDerivativeStep = 1e-5;

}  // namespace

EigenFrame eigenframe(const SplitSystem& system, double u) {
  HermitianEigen eig = system.eigen_at(u);
  return {u, std::move(eig.values), std::move(eig.vectors)};
}

void align_gauge(const EigenFrame& prev, EigenFrame& next, double degeneracy_tol) {
  const Eigen::Index d = next.energies.size();
  if (prev.vectors.rows() != next.vectors.rows() || prev.energies.size() != d) {
    throw DimensionError("align_gauge: frames of different dimension");
  }
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && next.energies(end) - next.energies(end - 1) < degeneracy_tol) ++end;
    const Eigen::Index width = end - start;
    // Overlap M = prev^dag next on the cluster; right-multiplying next by V U^dag
    // (from M = U S V^dag) makes prev^dag next Hermitian positive semidefinite.
    Matrix overlap = prev.vectors.middleCols(start, width).adjoint() * next.vectors.middleCols(start, width);
    if (width == 1) {
      const Complex c = overlap(0, 0);
      if (std::abs(c) > 0.0) next.vectors.col(start) *= std::conj(c) / std::abs(c);
    } else {
      Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Matrix rotation = svd.matrixV() * svd.matrixU().adjoint();
      next.vectors.middleCols(start, width) = next.vectors.middleCols(start, width) * rotation;
    }
    start = end;
  }
}

std::vector<EigenFrame> eigenframe_path(const SplitSystem& system, const std::vector<double>& u_samples) {
  for (std::size_t i = 1; i < u_samples.size(); ++i) {
    if (u_samples[i] < u_samples[i - 1]) throw DomainError("eigenframe_path: u samples must be sorted");
  }
  std::vector<EigenFrame> frames;
  frames.reserve(u_samples.size());
  for (double u : u_samples) {
    EigenFrame f = eigenframe(system, u);
    if (!frames.empty()) align_gauge(frames.back(), f);
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<EigenFrame> eigenframe_path(const PauliSum& h1, const PauliSum& h2,
                                        const std::vector<double>& u_samples) {
  return eigenframe_path(SplitSystem(h1, h2), u_samples);
}

GapMinimum minimum_gap(const SplitSystem& system, int samples) {
  if (system.dim() < 2) throw DomainError("minimum_gap: need at least two levels");
  GapMinimum best{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < samples; ++i) {
    const double u = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(system.hamiltonian(u), Eigen::EigenvaluesOnly);
    const double gap = solver.eigenvalues()(1) - solver.eigenvalues()(0);
    if (gap < best.gap) best = {gap, u};
  }
  return best;
}

PopulationTrace population_trace(const SplitSystem& system, const Schedule& sched, const TrotterPlan& plan) {
  const std::vector<double> times = step_times(plan, sched.total_time());
  std::vector<double> us(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) us[k] = sched.value(times[k]);
  // A monotone ramp gives sorted u; otherwise track the frames in time order.
  std::vector<EigenFrame> frames;
  frames.reserve(us.size());
  for (double u : us) {
    EigenFrame f = eigenframe(system, u);
    if (!frames.empty()) align_gauge(frames.back(), f);
    frames.push_back(std::move(f));
  }
  const Eigen::Index d = system.dim();
  PopulationTrace trace;
  trace.times = times;
  trace.u = us;
  trace.populations.resize(static_cast<Eigen::Index>(times.size()), d);
  trace.overlaps.resize(static_cast<Eigen::Index>(times.size()), d);
  Matrix psi = frames.front().vectors.col(0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0) system.apply_step(sched, times[k - 1], times[k], plan.order, plan.ordering, psi);
    const Vector b = frames[k].vectors.adjoint() * psi.col(0);
    trace.overlaps.row(static_cast<Eigen::Index>(k)) = b.transpose();
    trace.populations.row(static_cast<Eigen::Index>(k)) = b.cwiseAbs2().transpose();
  }
  return trace;
}

PopulationTrace population_trace(const PauliSum& h1, const PauliSum& h2, const Schedule& sched,
                                 const TrotterPlan& plan) {
  return population_trace(SplitSystem(h1, h2), sched, plan);
}

void write_population_csv(const PopulationTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "t,u";
  for (Eigen::Index i = 0; i < trace.populations.cols(); ++i) out << ",pop_" << i;
  out << '\n';
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out << format_double(trace.times[k]) << ',' << format_double(trace.u[k]);
    for (Eigen::Index i = 0; i < trace.populations.cols(); ++i) {
      out << ',' << format_double(trace.populations(static_cast<Eigen::Index>(k), i));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

GroundDeficit ground_deficit(const PopulationTrace& trace) {
  GroundDeficit out;
  const Eigen::Index n = trace.overlaps.rows();
  if (n == 0) return out;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double deficit = 1.0 - std::abs(trace.overlaps(k, 0));
    if (deficit > out.max_deficit) {
      out.max_deficit = deficit;
      out.max_at_time = trace.times[static_cast<std::size_t>(k)];
    }
  }
  out.final_deficit = 1.0 - std::abs(trace.overlaps(n - 1, 0));
  return out;
}

CouplingDiagnostics coupling_diagnostics(const SplitSystem& system, const Schedule& sched, double dt,
                                         double t) {
  const double T = sched.total_time();
  if (!(t >= 0.0 && t <= T)) throw DomainError("coupling_diagnostics: t must lie in [0, T]");
  if (!(dt > 0.0)) throw DomainError("coupling_diagnostics: dt must be positive");
  const double u = sched.value(t);
  const EigenFrame frame = eigenframe(system, u);
  EigenFrame minus = eigenframe(system, u - kDerivativeStep);
  EigenFrame plus = eigenframe(system, u + kDerivativeStep);
  align_gauge(frame, minus);
  align_gauge(frame, plus);
  // d(phi)/d(t/T) = d(phi)/du * s'(t/T).
  const Matrix dphi = (plus.vectors - minus.vectors) * (sched.ramp_derivative(t / T) / (2.0 * kDerivativeStep));

  Matrix step = Matrix::Identity(system.dim(), system.dim());
  apply_expm(system.h1_eigen(), dt * (1.0 - u), step);
  apply_expm(system.h2_eigen(), dt * u, step);
  const Matrix& phi = frame.vectors;
  const Matrix m = phi.adjoint() * step * phi;        // <phi_i|U|phi_j>
  const Matrix dot_overlap = dphi.adjoint() * phi;    // <dphi_i|phi_j>

  const Eigen::Index d = system.dim();
  CouplingDiagnostics out;
  out.R = Matrix::Zero(d, d);
  out.S = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double norm_rate = std::real(dphi.col(i).dot(phi.col(i)));
    const double factor = (1.0 + 2.0 * norm_rate * t / T) / dt;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j) out.R(i, j) = m(i, j) * factor;
      out.S(i, j) = dot_overlap(i, j) * m(j, j) / T;
    }
  }
  out.Q = dot_overlap * m / T;
  return out;
}

}  // namespace trotterlab
