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

#ifndef TROTTERLAB_CLI_HPP
#define TROTTERLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace trotterlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs `trotterlab <args...>` (args exclude the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Grid specifications: "a,b,c", "lin:lo:hi:n" or "log:lo:hi:n". Throws DomainError.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace trotterlab::cli

#endif  // TROTTERLAB_CLI_HPP
