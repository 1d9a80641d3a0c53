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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "trotterlab/errors.hpp"
#include "trotterlab/spectral.hpp"

namespace trotterlab {
namespace {

const PauliSum kX = PauliSum::from_words({{1.0, "X"}});
const PauliSum kZ = PauliSum::from_words({{1.0, "Z"}});

double max_offdiag(const Matrix& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) out = std::max(out, std::abs(m(i, j)));
  return out;
}

TEST(EigenFrame, TwoLevelMidpointEnergies) {
  const auto frames = eigenframe_path(kX, kZ, {0.5});
  EXPECT_NEAR(frames[0].energies(0), -1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(frames[0].energies(1), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(frames[0].energies(1), 0.70711, 1e-5);
}

TEST(EigenFrame, MinimumGapClosedForm) {
  const GapMinimum g = minimum_gap(SplitSystem(kX, kZ));
  EXPECT_NEAR(g.gap, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(g.u, 0.5, 1e-9);
  for (double u : {0.0, 0.2, 0.7, 1.0}) {
    const auto f = eigenframe_path(kX, kZ, {u})[0];
    EXPECT_NEAR(f.energies(1) - f.energies(0), 2 * std::sqrt((1 - u) * (1 - u) + u * u), 1e-12);
  }
}

TEST(EigenFrame, GroundOfDriverIsMinusState) {
  const auto f = eigenframe_path(kX, kZ, {0.0})[0];
  Vector minus(2);
  minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(minus.dot(f.vectors.col(0))), 1.0, 1e-12);
}

TEST(EigenFrame, EigenpairsAndGaugeContinuity) {
  const SplitSystem sys(PauliSum::from_words({{1.0, "XII"}, {1.0, "IXI"}, {1.0, "IIX"}}),
                        PauliSum::from_words({{1.0, "ZZI"}, {1.0, "IZZ"}, {0.5, "ZII"}}));
  std::vector<double> us;
  for (int k = 0; k <= 50; ++k) us.push_back(k / 50.0);
  const auto frames = eigenframe_path(sys, us);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const Matrix h = sys.hamiltonian(us[k]);
    for (Eigen::Index i = 0; i < sys.dim(); ++i) {
      EXPECT_LT((h * frames[k].vectors.col(i) - frames[k].energies(i) * frames[k].vectors.col(i)).norm(), 1e-10);
    }
    if (k == 0) continue;
    const Matrix overlap = frames[k - 1].vectors.adjoint() * frames[k].vectors;
    for (Eigen::Index i = 0; i < sys.dim(); ++i) {
      EXPECT_NEAR(overlap(i, i).imag(), 0.0, 1e-10) << "k=" << k << " i=" << i;
      EXPECT_GE(overlap(i, i).real(), 0.0) << "k=" << k << " i=" << i;
    }
  }
}

TEST(EigenFrame, DegenerateClusterAlignedAsSubspace) {
  // Z0Z1 has two-fold degenerate levels for every u when the driver is Z-only.
  const SplitSystem sys(PauliSum::from_words({{0.3, "ZI"}}), PauliSum::from_words({{1.0, "ZZ"}}));
  const auto frames = eigenframe_path(sys, {0.6, 0.61});
  const Matrix overlap = frames[0].vectors.adjoint() * frames[1].vectors;
  // Aligned blocks: overlap Hermitian positive semidefinite on every cluster.
  EXPECT_LT((overlap - overlap.adjoint()).norm(), 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> es(overlap);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
}

TEST(EigenFrame, UnsortedSamplesRejected) {
  EXPECT_THROW(eigenframe_path(kX, kZ, {0.5, 0.2}), DomainError);
}

TEST(Population, StartsInGroundAndConserved) {
  const auto trace = population_trace(kX, kZ, Schedule::linear(20.0), {1, 0.25, Ordering::h1_first, 1.0});
  EXPECT_NEAR(trace.populations(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(trace.populations(0, 1), 0.0, 1e-12);
  for (Eigen::Index k = 0; k < trace.populations.rows(); ++k) {
    EXPECT_NEAR(trace.populations.row(k).sum(), 1.0, 1e-9);
  }
  const SplitSystem sys(PauliSum::from_words({{1.0, "XI"}, {1.0, "IX"}}),
                        PauliSum::from_words({{1.0, "ZZ"}, {0.4, "ZI"}}));
  const auto t2 = population_trace(sys, Schedule::smoothstep(8.0), {2, 0.3, Ordering::h2_first, 0.7});
  for (Eigen::Index k = 0; k < t2.populations.rows(); ++k) {
    EXPECT_NEAR(t2.populations.row(k).sum(), 1.0, 1e-9);
  }
  EXPECT_DOUBLE_EQ(t2.times.back(), 0.7 * 8.0);
}

TEST(Population, MatchesDirectPropagation) {
  const SplitSystem sys(kX, kZ);
  const Schedule s = Schedule::linear(10.0);
  const TrotterPlan plan{1, 0.5, Ordering::h1_first, 1.0};
  const auto trace = population_trace(sys, s, plan);
  const Vector psi = trotter_state(sys, s, plan, sys.initial_state(s));
  const Vector g = oracle::ground(oracle::word("Z"));
  EXPECT_NEAR(trace.populations(trace.populations.rows() - 1, 0), std::norm(g.dot(psi)), 1e-12);
}

TEST(Population, MidRampDipExceedsFinalDeficit) {
  const auto trace = population_trace(kX, kZ, Schedule::linear(100.0), {1, 0.5, Ordering::h1_first, 1.0});
  const GroundDeficit d = ground_deficit(trace);
  EXPECT_GT(d.max_deficit, d.final_deficit);
  EXPECT_GT(d.max_at_time, 20.0);
  EXPECT_LT(d.max_at_time, 80.0);
}

TEST(Population, SelfHealingTenfold) {
  for (double dt : {0.1, 0.3, 0.5}) {
    const auto trace = population_trace(kX, kZ, Schedule::linear(100.0), {1, dt, Ordering::h1_first, 1.0});
    const GroundDeficit d = ground_deficit(trace);
    EXPECT_GE(d.max_deficit, 10.0 * d.final_deficit) << "dt=" << dt;
  }
}

TEST(Population, EarlyDeficitQuadraticInStep) {
  std::vector<double> dts{0.1, 0.2, 0.4, 0.6, 0.8, 1.0}, deficits;
  for (double dt : dts) {
    const auto trace = population_trace(kX, kZ, Schedule::linear(100.0), {1, dt, Ordering::h1_first, 0.1});
    deficits.push_back(ground_deficit(trace).final_deficit);
  }
  EXPECT_NEAR(oracle::loglog_slope(dts, deficits), 2.0, 0.2);
}

TEST(Population, CsvHeaderAndRows) {
  const auto trace = population_trace(kX, kZ, Schedule::linear(2.0), {1, 0.5, Ordering::h1_first, 1.0});
  const auto path = std::filesystem::temp_directory_path() / "trotterlab_population_test.csv";
  write_population_csv(trace, path.string());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,u,pop_0,pop_1");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 5);
  std::filesystem::remove(path);
}

TEST(Coupling, EndpointsDecouple) {
  const SplitSystem sys(kX, kZ);
  const Schedule s = Schedule::linear(100.0);
  for (double dt : {0.05, 0.3}) {
    EXPECT_LT(max_offdiag(coupling_diagnostics(sys, s, dt, 0.0).R), 1e-8);
    EXPECT_LT(max_offdiag(coupling_diagnostics(sys, s, dt, 100.0).R), 1e-8);
  }
  const SplitSystem three(PauliSum::from_words({{1.0, "XII"}, {1.0, "IXI"}, {1.0, "IIX"}}),
                          PauliSum::from_words({{1.0, "ZZI"}, {1.0, "IZZ"}, {0.5, "ZII"}}));
  EXPECT_LT(max_offdiag(coupling_diagnostics(three, s, 0.2, 0.0).R), 1e-8);
  EXPECT_LT(max_offdiag(coupling_diagnostics(three, s, 0.2, 100.0).R), 1e-8);
}

TEST(Coupling, OffDiagonalLinearInStep) {
  const SplitSystem sys(kX, kZ);
  const Schedule s = Schedule::linear(100.0);
  std::vector<double> dts{0.01, 0.02, 0.05, 0.1, 0.2}, r;
  for (double dt : dts) r.push_back(max_offdiag(coupling_diagnostics(sys, s, dt, 40.0).R));
  EXPECT_NEAR(oracle::loglog_slope(dts, r), 1.0, 0.15);
}

TEST(Coupling, QSumsOverIntermediateStates) {
  const SplitSystem sys(kX, kZ);
  const Schedule s = Schedule::linear(10.0);
  const CouplingDiagnostics c = coupling_diagnostics(sys, s, 0.05, 3.0);
  // S keeps the k = j term of the sum defining Q; the rest is second order in the step.
  EXPECT_GT(c.S.norm(), 0.0);
  EXPECT_LT((c.Q - c.S).norm(), 0.05 * c.S.norm());
  EXPECT_THROW(coupling_diagnostics(sys, s, 0.2, 11.0), DomainError);
  EXPECT_THROW(coupling_diagnostics(sys, s, 0.0, 1.0), DomainError);
}

}  // namespace
}  // namespace trotterlab
