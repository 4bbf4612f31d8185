// Copyright 2026 The HTPL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HTPL_TOOLS_CSV_H_
#define HTPL_TOOLS_CSV_H_

#include <string>
#include <vector>

#include "absl/status/status.h"

namespace htpl::cli {

inline constexpr char kCsvSchemaVersion[] = "1";

// In-memory CSV with a versioned schema comment above the header row.
class CsvTable {
 public:
  CsvTable(std::string experiment, std::vector<std::string> columns);

  // Values must match the column count.
  absl::Status AddRow(std::vector<std::string> values);

  const std::vector<std::string>& columns() const { return columns_; }
  size_t num_rows() const { return rows_.size(); }
  std::string Render() const;

 private:
  std::string experiment_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Twelve significant digits for every numeric cell; "inf", "-inf" and "nan"
// spelled out.
std::string FormatNumber(double value);

// Writes `contents` to a sibling temporary file and renames it over `path`,
// so a failed run never leaves a partial file behind.
absl::Status WriteFileAtomically(const std::string& path,
                                 const std::string& contents);

}  // namespace htpl::cli

#endif  // HTPL_TOOLS_CSV_H_
