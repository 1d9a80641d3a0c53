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

#ifndef TROTTERLAB_PAULI_HPP
#define TROTTERLAB_PAULI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trotterlab/linalg.hpp"

namespace trotterlab {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Largest qubit count with a dense realization (4096-dim).
inline constexpr std::size_t kDenseQubitCap = 12;

/// Coefficients below this magnitude are dropped on canonicalization.
inline constexpr double kMergeTolerance = 1e-14;

/// Tensor product of single-qubit Paulis times a phase i^k, k in {0,1,2,3}.
/// Qubit 0 is the leftmost tensor factor (most significant basis bit).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t qubit_count);
  PauliString(std::vector<Pauli> letters, int phase_power = 0);

  /// Parses a word such as "XIZ", optionally prefixed by "+", "-", "i", "-i".
  static PauliString parse(std::string_view text);

  std::size_t qubit_count() const { return letters_.size(); }
  Pauli letter(std::size_t qubit) const { return letters_.at(qubit); }
  void set_letter(std::size_t qubit, Pauli p) { letters_.at(qubit) = p; }
  const std::vector<Pauli>& letters() const { return letters_; }

  /// Phase as a power of i, in [0, 4).
  int phase_power() const { return phase_; }
  Complex phase() const;
  void set_phase_power(int k) { phase_ = ((k % 4) + 4) % 4; }

  bool is_identity() const;
  bool commutes_with(const PauliString& other) const;
  std::size_t weight() const;

  /// Letters only, e.g. "XIZ".
  std::string word() const;
  /// Phase prefix and word, e.g. "-iXIZ".
  std::string to_string() const;

  /// Bit masks in basis-index order (qubit q at bit n-1-q).
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.phase_ == b.phase_ && a.letters_ == b.letters_;
  }

 private:
  std::vector<Pauli> letters_;
  int phase_ = 0;
};

/// Group product a*b with accumulated phase.
PauliString multiply(const PauliString& a, const PauliString& b);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

/// Real-weighted sum of phase-carrying Pauli strings.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t qubit_count) : qubit_count_(qubit_count) {}

  /// Builds from (coefficient, word) pairs, e.g. {{0.5, "XI"}, {1.0, "ZZ"}}.
  static PauliSum from_words(const std::vector<std::pair<double, std::string>>& terms);
  static PauliSum identity(std::size_t qubit_count, double coefficient = 1.0);
  /// coefficient * letter on one qubit.
  static PauliSum single(std::size_t qubit_count, std::size_t qubit, Pauli letter,
                         double coefficient = 1.0);

  std::size_t qubit_count() const { return qubit_count_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(double coefficient, const PauliString& string);
  void add_term(double coefficient, std::string_view word);

  /// Merges duplicates, normalizes phases to {+1, +i}, drops |c| < kMergeTolerance,
  /// sorts by word.
  PauliSum canonical() const;

  /// True when every string carries a real phase (so the sum is Hermitian).
  bool is_hermitian() const;
  /// Sum of |coefficient|, an upper bound on the operator norm.
  double one_norm() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(double scale);

 private:
  std::size_t qubit_count_ = 0;
  std::vector<PauliTerm> terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a, const PauliSum& b);
PauliSum operator*(double scale, PauliSum a);

/// Canonicalized product of two sums.
PauliSum multiply(const PauliSum& a, const PauliSum& b);
/// Canonicalized [a, b] = ab - ba.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Dense 2^n x 2^n realization; throws CapacityError above kDenseQubitCap.
Matrix to_dense(const PauliSum& h);

/// Text format: one "<coefficient> <word>" per line, '#' starts a comment.
PauliSum parse_pauli_text(std::istream& in);
PauliSum parse_pauli_text(const std::string& text);
PauliSum load_pauli_file(const std::string& path);
std::string format_pauli_text(const PauliSum& h);

/// Matrix-free action of a Pauli sum, grouped by bit-flip pattern.
/// Each group stores the diagonal factor applied before the flip.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(const PauliSum& h);

  /// a*A + b*B on the same space.
  static SparseOperator combine(double a, const SparseOperator& A, double b, const SparseOperator& B);

  std::size_t dim() const { return dim_; }
  double norm_bound() const { return norm_bound_; }

  /// out = H * in (column-wise); out is resized.
  void apply(const Matrix& in, Matrix& out) const;

 private:
  std::size_t dim_ = 0;
  double norm_bound_ = 0.0;
  std::vector<std::uint64_t> flips_;
  std::vector<Vector> diagonals_;
};

/// x <- exp(-i t H) x by scaled Taylor series.
void expm_action(const SparseOperator& h, double t, Matrix& x);

/// Propagates the pair (dx, x) with the block generator [[H, D], [0, H]]:
/// afterwards x <- exp(-i t H) x and dx <- exp(-i t H) dx + (d/du exp(-i t (H + u D))|_{u=0}) x.
void expm_frechet_action(const SparseOperator& h, const SparseOperator& d, double t, Matrix& x,
                         Matrix& dx);

}  // namespace trotterlab

#endif  // TROTTERLAB_PAULI_HPP
