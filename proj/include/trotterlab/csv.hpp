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

#ifndef TROTTERLAB_CSV_HPP
#define TROTTERLAB_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace trotterlab {

/// Shortest round-trip form, so parse_double(format_double(v)) == v bitwise.
std::string format_double(double v);
/// Parses a full token as a double ("nan"/"inf" accepted); throws IoError otherwise.
double parse_double(const std::string& token);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws IoError naming the missing column.
  std::size_t column(const std::string& name) const;
};

/// Comma-separated, no quoting; first line is the header. Rows must match header width.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::vector<std::string> split(const std::string& text, char sep);

}  // namespace trotterlab

#endif  // TROTTERLAB_CSV_HPP
