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

#ifndef TROTTERLAB_PRESETS_HPP
#define TROTTERLAB_PRESETS_HPP

#include <string>
#include <vector>

#include "trotterlab/pauli.hpp"
#include "trotterlab/schedule.hpp"

namespace trotterlab {

struct Preset {
  std::string name;
  PauliSum h1;
  PauliSum h2;
  RampKind ramp = RampKind::linear;
  std::string notes;
};

/// two-level, ising8, tfim6, h2-jw, h2-bk, h2-checksum, h2-updown.
const std::vector<Preset>& builtin_presets();
/// Throws LookupError for unknown names.
const Preset& find_preset(const std::string& name);

/// Sum of X_i on n qubits.
PauliSum transverse_field(std::size_t n, double coefficient = 1.0);

}  // namespace trotterlab

#endif  // TROTTERLAB_PRESETS_HPP
