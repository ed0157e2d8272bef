// Copyright 2026 The telepovm Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "telepovm/linalg.hpp"

namespace telepovm::cli {

enum class Command { Teleport, Naive, Conclusive, Quasi, Steer, PovmCheck };
enum class Format { Csv, Json };

std::string_view to_string(Command c);

/// One cell of an output table; monostate renders as an empty CSV field or
/// JSON null.
using Value = std::variant<std::monostate, bool, std::int64_t, std::uint64_t,
                           double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

/// A named sweep over one scalar parameter.
struct Range {
  std::string name;
  std::vector<double> values;
};

/**
 * Parses "x" or "start:stop:step". Points are start + k * step; stop is
 * included when it lies within 1e-12 of a point. Throws ValidationError on
 * malformed text, a non-positive step or start > stop.
 */
Range parse_range(const std::string& name, const std::string& text);

struct RunConfig {
  Command command = Command::Teleport;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::vector<Range> sweep;
  Complex alpha{0.70710678118654752, 0.0};
  Complex beta{0.70710678118654752, 0.0};
  /// steer only: rectilinear, diagonal, telepovm, b92 or b92-hadamard.
  std::string povm = "telepovm";
  Format format = Format::Csv;
  /// "-" for stdout.
  std::string output_path = "-";

  const Range* find(std::string_view name) const;
};

/// Throws ValidationError when a field is outside its domain.
void validate(const RunConfig& config);

/// Rows for one run, in sweep-then-trial order. Deterministic in `config`.
Table build_table(const RunConfig& config);

/// CSV: "# schema=1" line, header, RFC-4180 quoting, '\n' line ends, floats
/// with 17 significant digits. JSON: array of flat objects.
std::string render(const Table& table, Format format);

/// Writes `text` to `path` ("-" is `out`). Returns false on I/O failure.
bool write_output(const std::string& text, const std::string& path,
                  std::ostream& out);

/// Validates, builds, renders and writes. Returns the process exit code:
/// 0 success, 1 I/O error, 2 validation error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point; `args` excludes the program name.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace telepovm::cli
