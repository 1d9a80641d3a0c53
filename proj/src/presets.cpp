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

#include "trotterlab/presets.hpp"

#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

// Open chain: sum Z_i Z_{i+1} + z * sum Z_i + x * sum X_i.
PauliSum ising_chain(std::size_t n, double z, double x) {
  PauliSum h(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    PauliString zz(n);
    zz.set_letter(i, Pauli::Z);
    zz.set_letter(i + 1, Pauli::Z);
    h.add_term(1.0, zz);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (z != 0.0) h += PauliSum::single(n, i, Pauli::Z, z);
    if (x != 0.0) h += PauliSum::single(n, i, Pauli::X, x);
  }
  return h;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> out;
  out.push_back({"two-level", PauliSum::from_words({{1.0, "X"}}), PauliSum::from_words({{1.0, "Z"}}),
                 RampKind::linear, "single qubit, H1 = X, H2 = Z"});
  out.push_back({"ising8", transverse_field(8), ising_chain(8, 0.8, 0.0), RampKind::linear,
                 "8-qubit open Ising chain, H2 = sum ZZ + 0.8 sum Z, H1 = sum X"});
  out.push_back({"tfim6", transverse_field(6), ising_chain(6, 0.8, 0.9), RampKind::linear,
                 "6-qubit open TFIM, H2 = sum (ZZ + 0.8 Z + 0.9 X), H1 = sum X"});
  out.push_back({"h2-jw", transverse_field(4),
                 PauliSum::from_words({{-0.106, "IIII"},
                                       {0.045, "XYYX"},
                                       {-0.045, "XXYY"},
                                       {0.045, "YXXY"},
                                       {-0.045, "YYXX"},
                                       {0.17, "ZIII"},
                                       {0.17, "IZII"},
                                       {0.168, "ZZII"},
                                       {0.12, "ZIZI"},
                                       {0.12, "IZIZ"},
                                       {0.166, "ZIIZ"},
                                       {0.166, "IZZI"},
                                       {-0.22, "IIZI"},
                                       {-0.22, "IIIZ"},
                                       {0.174, "IIZZ"}}),
                 RampKind::linear, "H2 molecule, Jordan-Wigner encoding, 4 qubits"});
  out.push_back({"h2-bk", transverse_field(4),
                 PauliSum::from_words({{-0.106, "IIII"},
                                       {0.045, "XZXI"},
                                       {0.045, "XZXZ"},
                                       {0.045, "YZYI"},
                                       {0.045, "YZYZ"},
                                       {-0.22, "IZZZ"},
                                       {-0.22, "IIZI"},
                                       {0.17, "ZIII"},
                                       {0.17, "ZZII"},
                                       {0.166, "ZZZI"},
                                       {0.166, "ZZZZ"},
                                       {0.12, "ZIZI"},
                                       {0.12, "ZIZZ"},
                                       {0.168, "IZII"},
                                       {0.174, "IZIZ"}}),
                 RampKind::linear, "H2 molecule, Bravyi-Kitaev encoding, 4 qubits"});
  out.push_back({"h2-checksum", transverse_field(3),
                 PauliSum::from_words({{-0.106, "III"},
                                       {0.091, "XYY"},
                                       {-0.091, "YYX"},
                                       {0.17, "ZII"},
                                       {0.17, "IZI"},
                                       {0.342, "ZZI"},
                                       {0.24, "ZIZ"},
                                       {0.331, "IZZ"},
                                       {-0.22, "ZZZ"},
                                       {-0.22, "IIZ"}}),
                 RampKind::linear, "H2 molecule, even-weight checksum encoding, 3 qubits"});
  out.push_back({"h2-updown", transverse_field(2),
                 PauliSum::from_words({{-0.347, "II"}, {0.182, "XX"}, {0.011, "ZZ"}, {0.39, "ZI"}, {0.39, "IZ"}}),
                 RampKind::linear, "H2 molecule, up-down checksum encoding, 2 qubits"});
  return out;
}

}  // namespace

PauliSum transverse_field(std::size_t n, double coefficient) {
  PauliSum h(n);
  for (std::size_t i = 0; i < n; ++i) h += PauliSum::single(n, i, Pauli::X, coefficient);
  return h;
}

const std::vector<Preset>& builtin_presets() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : builtin_presets()) {
    if (p.name == name) return p;
  }
  throw LookupError("unknown preset '" + name + "'");
}

}  // namespace trotterlab
