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

#include "trotterlab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

constexpr Complex kI(0.0, 1.0);

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Pauli letter_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ValidityError(std::string("invalid Pauli letter '") + c + "'");
  }
}

char char_from_letter(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

// Product of single-qubit letters: resulting letter and phase as a power of i.
std::pair<Pauli, int> letter_product(Pauli a, Pauli b) {
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const Pauli r = static_cast<Pauli>(ia ^ ib);
  if (ia == 0 || ib == 0 || ia == ib) return {r, 0};
  // X->Y->Z->X is the positive cycle.
  const bool positive = ((ib - ia + 3) % 3) == 1;
  return {r, positive ? 1 : 3};
}

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": qubit-count mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

PauliString::PauliString(std::size_t qubit_count) : letters_(qubit_count, Pauli::I) {
  if (qubit_count == 0) throw DomainError("PauliString: qubit_count must be positive");
}

PauliString::PauliString(std::vector<Pauli> letters, int phase_power) : letters_(std::move(letters)) {
  if (letters_.empty()) throw DomainError("PauliString: qubit_count must be positive");
  set_phase_power(phase_power);
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::vector<Pauli> letters;
  for (; pos < text.size(); ++pos) letters.push_back(letter_from_char(text[pos]));
  if (letters.empty()) throw ValidityError("PauliString::parse: empty word");
  return PauliString(std::move(letters), phase);
}

Complex PauliString::phase() const { return i_power(phase_); }

bool PauliString::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(), [](Pauli p) { return p == Pauli::I; });
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_size(qubit_count(), other.qubit_count(), "commutes_with");
  int anti = 0;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    const Pauli a = letters_[q];
    const Pauli b = other.letters_[q];
    if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
  }
  return anti % 2 == 0;
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::word() const {
  std::string out;
  out.reserve(letters_.size());
  for (Pauli p : letters_) out.push_back(char_from_letter(p));
  return out;
}

std::string PauliString::to_string() const {
  static const char* kPrefix[] = {"+", "+i", "-", "-i"};
  return std::string(kPrefix[phase_]) + word();
}

std::uint64_t PauliString::x_mask() const {
  if (letters_.size() > 64) throw CapacityError("PauliString: masks need <= 64 qubits");
  std::uint64_t m = 0;
  const std::size_t n = letters_.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - q);
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  if (letters_.size() > 64) throw CapacityError("PauliString: masks need <= 64 qubits");
  std::uint64_t m = 0;
  const std::size_t n = letters_.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (letters_[q] == Pauli::Z || letters_[q] == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - q);
  }
  return m;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_size(a.qubit_count(), b.qubit_count(), "multiply");
  std::vector<Pauli> letters(a.qubit_count());
  int phase = a.phase_power() + b.phase_power();
  for (std::size_t q = 0; q < letters.size(); ++q) {
    auto [p, k] = letter_product(a.letter(q), b.letter(q));
    letters[q] = p;
    phase += k;
  }
  return PauliString(std::move(letters), phase);
}

PauliSum PauliSum::from_words(const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) throw DomainError("PauliSum::from_words: no terms");
  PauliSum out;
  for (const auto& [c, w] : terms) {
    PauliString s = PauliString::parse(w);
    if (out.qubit_count_ == 0) out.qubit_count_ = s.qubit_count();
    out.add_term(c, s);
  }
  return out;
}

PauliSum PauliSum::identity(std::size_t qubit_count, double coefficient) {
  PauliSum out(qubit_count);
  out.add_term(coefficient, PauliString(qubit_count));
  return out;
}

PauliSum PauliSum::single(std::size_t qubit_count, std::size_t qubit, Pauli letter,
                          double coefficient) {
  PauliString s(qubit_count);
  s.set_letter(qubit, letter);
  PauliSum out(qubit_count);
  out.add_term(coefficient, s);
  return out;
}

void PauliSum::add_term(double coefficient, const PauliString& string) {
  if (qubit_count_ == 0) qubit_count_ = string.qubit_count();
  check_same_size(qubit_count_, string.qubit_count(), "PauliSum::add_term");
  terms_.push_back({coefficient, string});
}

void PauliSum::add_term(double coefficient, std::string_view word) {
  add_term(coefficient, PauliString::parse(word));
}

PauliSum PauliSum::canonical() const {
  std::map<std::pair<std::string, int>, double> merged;
  for (const auto& t : terms_) {
    double c = t.coefficient;
    int k = t.string.phase_power();
    if (k >= 2) {
      c = -c;
      k -= 2;
    }
    merged[{t.string.word(), k}] += c;
  }
  PauliSum out(qubit_count_);
  for (const auto& [key, c] : merged) {
    if (std::abs(c) < kMergeTolerance) continue;
    PauliString s = PauliString::parse(key.first);
    s.set_phase_power(key.second);
    out.terms_.push_back({c, s});
  }
  return out;
}

bool PauliSum::is_hermitian() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliTerm& t) { return t.string.phase_power() % 2 == 0; });
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (qubit_count_ == 0) qubit_count_ = other.qubit_count_;
  check_same_size(qubit_count_, other.qubit_count_, "PauliSum::operator+");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (qubit_count_ == 0) qubit_count_ = other.qubit_count_;
  check_same_size(qubit_count_, other.qubit_count_, "PauliSum::operator-");
  for (const auto& t : other.terms_) terms_.push_back({-t.coefficient, t.string});
  return *this;
}

PauliSum& PauliSum::operator*=(double scale) {
  for (auto& t : terms_) t.coefficient *= scale;
  return *this;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
PauliSum operator*(double scale, PauliSum a) { return a *= scale; }

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  check_same_size(a.qubit_count(), b.qubit_count(), "multiply");
  PauliSum out(a.qubit_count());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      out.add_term(ta.coefficient * tb.coefficient, multiply(ta.string, tb.string));
    }
  }
  return out.canonical();
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_same_size(a.qubit_count(), b.qubit_count(), "commutator");
  PauliSum out(a.qubit_count());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if (ta.string.commutes_with(tb.string)) continue;
      // Anticommuting strings: ab - ba = 2ab.
      out.add_term(2.0 * ta.coefficient * tb.coefficient, multiply(ta.string, tb.string));
    }
  }
  return out.canonical();
}

Matrix to_dense(const PauliSum& h) {
  const std::size_t n = h.qubit_count();
  if (n == 0) throw DomainError("to_dense: empty qubit register");
  if (n > kDenseQubitCap) {
    throw CapacityError("to_dense: " + std::to_string(n) + " qubits exceeds the dense cap of " +
                        std::to_string(kDenseQubitCap));
  }
  const std::size_t dim = std::size_t{1} << n;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const int ny = std::popcount(x & z);
    const Complex factor = t.coefficient * t.string.phase() * i_power(ny);
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & z) % 2) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += sign * factor;
    }
  }
  return m;
}

PauliSum parse_pauli_text(std::istream& in) {
  PauliSum out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string coef_text, word, extra;
    if (!(ls >> coef_text)) continue;
    if (!(ls >> word) || (ls >> extra)) {
      throw ConstructionError("pauli text line " + std::to_string(line_no) + ": expected '<coefficient> <word>'");
    }
    double coef = 0.0;
    try {
      std::size_t used = 0;
      coef = std::stod(coef_text, &used);
      if (used != coef_text.size()) throw std::invalid_argument(coef_text);
    } catch (const std::exception&) {
      throw ConstructionError("pauli text line " + std::to_string(line_no) + ": bad coefficient '" + coef_text + "'");
    }
    PauliString s;
    try {
      s = PauliString::parse(word);
    } catch (const Error& e) {
      throw ConstructionError("pauli text line " + std::to_string(line_no) + ": " + e.what());
    }
    if (out.qubit_count() != 0 && s.qubit_count() != out.qubit_count()) {
      throw ConstructionError("pauli text line " + std::to_string(line_no) + ": word length " +
                    std::to_string(s.qubit_count()) + " differs from " + std::to_string(out.qubit_count()));
    }
    out.add_term(coef, s);
  }
  if (out.qubit_count() == 0) throw ConstructionError("pauli text: no terms");
  return out;
}

PauliSum parse_pauli_text(const std::string& text) {
  std::istringstream in(text);
  return parse_pauli_text(in);
}

PauliSum load_pauli_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open Hamiltonian file '" + path + "'");
  return parse_pauli_text(in);
}

std::string format_pauli_text(const PauliSum& h) {
  std::ostringstream out;
  for (const auto& t : h.terms()) {
    out << format_double(t.coefficient) << ' ';
    const int k = t.string.phase_power();
    out << (k == 0 ? "" : k == 1 ? "i" : k == 2 ? "-" : "-i") << t.string.word() << '\n';
  }
  return out.str();
}

SparseOperator::SparseOperator(const PauliSum& h) {
  const std::size_t n = h.qubit_count();
  if (n == 0) throw DomainError("SparseOperator: empty qubit register");
  if (n > kDenseQubitCap) throw CapacityError("SparseOperator: qubit count exceeds the dense cap");
  dim_ = std::size_t{1} << n;
  std::map<std::uint64_t, Vector> groups;
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const Complex factor = t.coefficient * t.string.phase() * i_power(std::popcount(x & z));
    auto [it, inserted] = groups.try_emplace(x);
    if (inserted) it->second = Vector::Zero(static_cast<Eigen::Index>(dim_));
    for (std::uint64_t b = 0; b < dim_; ++b) {
      it->second(static_cast<Eigen::Index>(b)) += (std::popcount(b & z) % 2) ? -factor : factor;
    }
    norm_bound_ += std::abs(t.coefficient);
  }
  for (auto& [x, d] : groups) {
    flips_.push_back(x);
    diagonals_.push_back(std::move(d));
  }
}

SparseOperator SparseOperator::combine(double a, const SparseOperator& A, double b,
                                       const SparseOperator& B) {
  if (A.dim_ != B.dim_) throw DimensionError("SparseOperator::combine: dimension mismatch");
  SparseOperator out;
  out.dim_ = A.dim_;
  out.norm_bound_ = std::abs(a) * A.norm_bound_ + std::abs(b) * B.norm_bound_;
  std::size_t i = 0, j = 0;
  while (i < A.flips_.size() || j < B.flips_.size()) {
    if (j == B.flips_.size() || (i < A.flips_.size() && A.flips_[i] < B.flips_[j])) {
      out.flips_.push_back(A.flips_[i]);
      out.diagonals_.push_back(a * A.diagonals_[i]);
      ++i;
    } else if (i == A.flips_.size() || B.flips_[j] < A.flips_[i]) {
      out.flips_.push_back(B.flips_[j]);
      out.diagonals_.push_back(b * B.diagonals_[j]);
      ++j;
    } else {
      out.flips_.push_back(A.flips_[i]);
      out.diagonals_.push_back(a * A.diagonals_[i] + b * B.diagonals_[j]);
      ++i;
      ++j;
    }
  }
  return out;
}

void SparseOperator::apply(const Matrix& in, Matrix& out) const {
  if (static_cast<std::size_t>(in.rows()) != dim_) throw DimensionError("SparseOperator::apply: dimension mismatch");
  out.setZero(in.rows(), in.cols());
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    const Complex* src = in.col(c).data();
    Complex* dst = out.col(c).data();
    for (std::size_t g = 0; g < flips_.size(); ++g) {
      const std::uint64_t x = flips_[g];
      const Complex* d = diagonals_[g].data();
      for (std::uint64_t b = 0; b < dim_; ++b) dst[b ^ x] += d[b] * src[b];
    }
  }
}

namespace {

constexpr double kTaylorRadius = 2.0;
constexpr int kTaylorMaxTerms = 80;

int substeps(double scaled_norm) {
  return std::max(1, static_cast<int>(std::ceil(scaled_norm / kTaylorRadius)));
}

}  // namespace

void expm_action(const SparseOperator& h, double t, Matrix& x) {
  const double scaled = std::abs(t) * h.norm_bound();
  if (scaled == 0.0) return;
  const int s = substeps(scaled);
  const Complex factor = -kI * (t / s);
  Matrix term, next;
  for (int step = 0; step < s; ++step) {
    term = x;
    for (int k = 1; k <= kTaylorMaxTerms; ++k) {
      h.apply(term, next);
      term = next * (factor / static_cast<double>(k));
      x += term;
      if (k >= 4 && term.norm() <= 1e-17 * x.norm()) break;
    }
  }
}

void expm_frechet_action(const SparseOperator& h, const SparseOperator& d, double t, Matrix& x,
                         Matrix& dx) {
  if (dx.rows() != x.rows() || dx.cols() != x.cols()) dx.setZero(x.rows(), x.cols());
  const double scaled = std::abs(t) * (h.norm_bound() + d.norm_bound());
  if (scaled == 0.0) return;
  const int s = substeps(scaled);
  const Complex factor = -kI * (t / s);
  Matrix tx, tdx, hx, hdx, ddx;
  for (int step = 0; step < s; ++step) {
    tx = x;
    tdx = dx;
    for (int k = 1; k <= kTaylorMaxTerms; ++k) {
      h.apply(tdx, hdx);
      d.apply(tx, ddx);
      h.apply(tx, hx);
      const Complex f = factor / static_cast<double>(k);
      tdx = (hdx + ddx) * f;
      tx = hx * f;
      x += tx;
      dx += tdx;
      if (k >= 4 && tx.norm() + tdx.norm() <= 1e-17 * (x.norm() + dx.norm())) break;
    }
  }
}

}  // namespace trotterlab
