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

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trotterlab/errors.hpp"
#include "trotterlab/linalg.hpp"
#include "trotterlab/pauli.hpp"

namespace trotterlab {
namespace {

PauliSum random_sum(std::mt19937& rng, std::size_t n, int terms) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coeff(0.0, 1.0);
  PauliSum h(n);
  for (int t = 0; t < terms; ++t) {
    PauliString s(n);
    for (std::size_t q = 0; q < n; ++q) s.set_letter(q, static_cast<Pauli>(letter(rng)));
    h.add_term(coeff(rng), s);
  }
  return h;
}

std::string random_word(std::mt19937& rng, std::size_t n) {
  static const char letters[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string w;
  for (std::size_t q = 0; q < n; ++q) w += letters[pick(rng)];
  return w;
}

TEST(PauliProduct, XTimesXIsIdentity) {
  const PauliString p = multiply(PauliString::parse("X"), PauliString::parse("X"));
  EXPECT_EQ(p.word(), "I");
  EXPECT_EQ(p.phase_power(), 0);
}

TEST(PauliProduct, XTimesZIsMinusIY) {
  const PauliString p = multiply(PauliString::parse("X"), PauliString::parse("Z"));
  EXPECT_EQ(p.word(), "Y");
  EXPECT_EQ(p.phase_power(), 3);  // -i
}

TEST(PauliProduct, DisjointSupportsCombineWithoutPhase) {
  const PauliString p = multiply(PauliString::parse("XI"), PauliString::parse("IZ"));
  EXPECT_EQ(p.word(), "XZ");
  EXPECT_EQ(p.phase_power(), 0);
}

TEST(PauliProduct, QubitCountMismatchThrows) {
  EXPECT_THROW(multiply(PauliString::parse("X"), PauliString::parse("XX")), DimensionError);
}

TEST(PauliProduct, MatchesDenseProductOnRandomStrings) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string a = random_word(rng, 3), b = random_word(rng, 3);
    const PauliString p = multiply(PauliString::parse(a), PauliString::parse(b));
    const oracle::M expected = oracle::word(a) * oracle::word(b);
    const oracle::M got = p.phase() * oracle::word(p.word());
    EXPECT_LT((expected - got).norm(), 1e-12) << a << " * " << b;
  }
}

TEST(PauliProduct, ReversedOrderDiffersAtMostBySign) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const PauliString a = PauliString::parse(random_word(rng, 4));
    const PauliString b = PauliString::parse(random_word(rng, 4));
    const PauliString ab = multiply(a, b), ba = multiply(b, a);
    EXPECT_EQ(ab.word(), ba.word());
    const int diff = ((ab.phase_power() - ba.phase_power()) % 4 + 4) % 4;
    EXPECT_TRUE(diff == 0 || diff == 2);
    EXPECT_EQ(diff == 0, a.commutes_with(b));
  }
}

TEST(PauliParse, AcceptsPhasePrefixes) {
  EXPECT_EQ(PauliString::parse("-iXZ").phase_power(), 3);
  EXPECT_EQ(PauliString::parse("iY").phase_power(), 1);
  EXPECT_EQ(PauliString::parse("-Z").phase_power(), 2);
  EXPECT_EQ(PauliString::parse("+Z").phase_power(), 0);
  EXPECT_EQ(PauliString::parse("-iXZ").to_string(), "-iXZ");
  EXPECT_THROW(PauliString::parse("XQ"), Error);
}

TEST(PauliCommutator, XWithZIsMinusTwoIY) {
  const PauliSum c = commutator(PauliSum::from_words({{1.0, "X"}}), PauliSum::from_words({{1.0, "Z"}}));
  oracle::M expected(2, 2);
  expected << 0, -2, 2, 0;
  EXPECT_LT((to_dense(c) - expected).norm(), 1e-12);
  const oracle::M direct = oracle::word("X") * oracle::word("Z") - oracle::word("Z") * oracle::word("X");
  EXPECT_LT((to_dense(c) - direct).norm(), 1e-12);
}

TEST(PauliCommutator, CommutingStringsGiveEmptySum) {
  const PauliSum c = commutator(PauliSum::from_words({{1.0, "ZI"}}), PauliSum::from_words({{1.0, "ZZ"}}));
  EXPECT_TRUE(c.empty());
}

TEST(PauliCommutator, NestedXXZIsFourZ) {
  const PauliSum x = PauliSum::from_words({{1.0, "X"}});
  const PauliSum c = commutator(x, commutator(x, PauliSum::from_words({{1.0, "Z"}})));
  const oracle::M X = oracle::word("X"), Z = oracle::word("Z");
  const oracle::M inner = X * Z - Z * X;
  const oracle::M expected = X * inner - inner * X;
  EXPECT_LT((to_dense(c) - expected).norm(), 1e-12);
  EXPECT_LT((to_dense(c) - 4.0 * Z).norm(), 1e-12);
}

TEST(PauliCommutator, QubitCountMismatchThrows) {
  EXPECT_THROW(commutator(PauliSum::from_words({{1.0, "X"}}), PauliSum::from_words({{1.0, "XX"}})), DimensionError);
}

TEST(PauliCommutator, DenseRealizationMatchesMatrixCommutator) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const PauliSum a = random_sum(rng, n, 4), b = random_sum(rng, n, 4);
    const Matrix da = to_dense(a), db = to_dense(b);
    EXPECT_LT((to_dense(commutator(a, b)) - (da * db - db * da)).norm(), 1e-12);
  }
}

TEST(PauliDense, SingleZIsDiagonal) {
  const Matrix z = to_dense(PauliSum::from_words({{1.0, "Z"}}));
  EXPECT_EQ(z(0, 0), Complex(1, 0));
  EXPECT_EQ(z(1, 1), Complex(-1, 0));
  EXPECT_EQ(z(0, 1), Complex(0, 0));
}

TEST(PauliDense, LinearCombination) {
  const Matrix h = to_dense(PauliSum::from_words({{0.5, "X"}, {0.5, "Z"}}));
  Matrix expected(2, 2);
  expected << 0.5, 0.5, 0.5, -0.5;
  EXPECT_LT((h - expected).norm(), 1e-15);
}

TEST(PauliDense, UpDownHydrogenSpectrumMatchesKroneckerOracle) {
  const std::vector<std::pair<double, std::string>> terms{
      {-0.347, "II"}, {0.182, "XX"}, {0.011, "ZZ"}, {0.39, "ZI"}, {0.39, "IZ"}};
  const Matrix h = to_dense(PauliSum::from_words(terms));
  EXPECT_TRUE(is_hermitian(h, 1e-12));
  Eigen::SelfAdjointEigenSolver<oracle::M> ref(oracle::sum(terms));
  Eigen::SelfAdjointEigenSolver<Matrix> got(h);
  EXPECT_LT((ref.eigenvalues() - got.eigenvalues()).norm(), 1e-12);
}

TEST(PauliDense, KroneckerOrderOnRandomWords) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string w = random_word(rng, 1 + trial % 4);
    EXPECT_LT((to_dense(PauliSum::from_words({{1.0, w}})) - oracle::word(w)).norm(), 1e-15) << w;
  }
}

TEST(PauliDense, CapacityCapEnforced) {
  EXPECT_THROW(to_dense(PauliSum::identity(13)), CapacityError);
  EXPECT_NO_THROW(to_dense(PauliSum::from_words({{1.0, "ZIIIII"}})));
}

TEST(PauliSumCanonical, MergesDuplicatesAndDropsZeros) {
  PauliSum h(2);
  h.add_term(0.5, "XZ");
  h.add_term(0.25, "XZ");
  h.add_term(1.0, "ZZ");
  h.add_term(-1.0, "ZZ");
  h.add_term(1e-16, "YY");
  const PauliSum c = h.canonical();
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_EQ(c.terms()[0].string.word(), "XZ");
  EXPECT_DOUBLE_EQ(c.terms()[0].coefficient, 0.75);
}

TEST(PauliSumCanonical, RealCoefficientSumsAreHermitian) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const PauliSum h = random_sum(rng, 3, 6).canonical();
    EXPECT_TRUE(h.is_hermitian());
    const Matrix m = to_dense(h);
    EXPECT_LE(operator_norm(m - m.adjoint()), 1e-12);
  }
}

TEST(OperatorNorm, Examples) {
  EXPECT_NEAR(operator_norm(to_dense(PauliSum::from_words({{1.0, "X"}}))), 1.0, 1e-14);
  const PauliSum c = commutator(PauliSum::from_words({{1.0, "X"}}), PauliSum::from_words({{1.0, "Z"}}));
  EXPECT_NEAR(operator_norm(to_dense(c)), 2.0, 1e-14);
  EXPECT_EQ(operator_norm(Matrix::Zero(4, 4)), 0.0);
}

TEST(OperatorNorm, MatchesSvdOracleAndIsSubmultiplicative) {
  std::mt19937 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix a(4, 4), b(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        a(i, j) = Complex(n(rng), n(rng));
        b(i, j) = Complex(n(rng), n(rng));
      }
    EXPECT_NEAR(operator_norm(a), oracle::opnorm(a), 1e-10);
    EXPECT_LE(operator_norm(a * b), operator_norm(a) * operator_norm(b) + 1e-10);
    EXPECT_LE(operator_norm(a + b), operator_norm(a) + operator_norm(b) + 1e-10);
    const Matrix h = a + a.adjoint();
    EXPECT_NEAR(operator_norm(h), oracle::opnorm(h), 1e-10);
  }
}

TEST(PauliText, ParsesCommentsAndRoundTrips) {
  const std::string text = "# up-down encoding\n-0.347 II\n0.182 XX\n\n0.011 ZZ\n0.39 ZI\n0.39 IZ\n";
  const PauliSum h = parse_pauli_text(text);
  EXPECT_EQ(h.qubit_count(), 2u);
  EXPECT_EQ(h.terms().size(), 5u);
  const PauliSum again = parse_pauli_text(format_pauli_text(h));
  EXPECT_EQ(to_dense(again), to_dense(h));
}

TEST(PauliText, RejectsMalformedLines) {
  EXPECT_THROW(parse_pauli_text("0.5 XQ\n"), Error);
  EXPECT_THROW(parse_pauli_text("abc XX\n"), Error);
  EXPECT_THROW(parse_pauli_text("0.5 XX\n0.5 X\n"), Error);
}

TEST(SparseOperator, ApplyMatchesDense) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const PauliSum h = random_sum(rng, 4, 8);
    const SparseOperator op(h);
    Matrix x = Matrix::Random(16, 2), y;
    op.apply(x, y);
    EXPECT_LT((y - to_dense(h) * x).norm(), 1e-12);
  }
}

TEST(SparseOperator, TaylorActionMatchesMatrixExponential) {
  std::mt19937 rng(17);
  const PauliSum h = random_sum(rng, 3, 6).canonical();
  Matrix x = Matrix::Random(8, 1);
  const Matrix x0 = x;
  expm_action(SparseOperator(h), 2.7, x);
  const oracle::M expected = oracle::expm(Complex(0, -2.7) * to_dense(h)) * x0;
  EXPECT_LT((x - expected).norm(), 1e-12);
}

TEST(SparseOperator, FrechetActionMatchesFiniteDifference) {
  std::mt19937 rng(19);
  const PauliSum h = random_sum(rng, 2, 4).canonical();
  const PauliSum d = random_sum(rng, 2, 3).canonical();
  Matrix x = Matrix::Random(4, 1);
  const Matrix x0 = x;
  Matrix dx = Matrix::Zero(4, 1);
  expm_frechet_action(SparseOperator(h), SparseOperator(d), 0.8, x, dx);
  const double eps = 1e-6;
  const oracle::M hp = to_dense(h) + eps * to_dense(d), hm = to_dense(h) - eps * to_dense(d);
  const oracle::M fd =
      (oracle::expm(Complex(0, -0.8) * hp) - oracle::expm(Complex(0, -0.8) * hm)) * x0 / (2 * eps);
  EXPECT_LT((dx - fd).norm(), 1e-8);
  EXPECT_LT((x - oracle::expm(Complex(0, -0.8) * to_dense(h)) * x0).norm(), 1e-12);
}

}  // namespace
}  // namespace trotterlab
