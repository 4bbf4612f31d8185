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

#include "csv.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace htpl::cli {

CsvTable::CsvTable(std::string experiment, std::vector<std::string> columns)
    : experiment_(std::move(experiment)), columns_(std::move(columns)) {}

absl::Status CsvTable::AddRow(std::vector<std::string> values) {
  if (values.size() != columns_.size()) {
    return absl::InternalError(absl::StrCat(
        "row has ", values.size(), " cells, header has ", columns_.size()));
  }
  rows_.push_back(std::move(values));
  return absl::OkStatus();
}

std::string CsvTable::Render() const {
  std::string out = absl::StrCat("# htpl-csv schema=", kCsvSchemaVersion,
                                 " experiment=", experiment_, "\n");
  absl::StrAppend(&out, absl::StrJoin(columns_, ","), "\n");
  for (const auto& row : rows_)
    absl::StrAppend(&out, absl::StrJoin(row, ","), "\n");
  return out;
}

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";  // folds -0
  return absl::StrFormat("%.12g", value);
}

absl::Status WriteFileAtomically(const std::string& path,
                                 const std::string& contents) {
  const std::string temp = absl::StrCat(path, ".partial");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out)
      return absl::UnavailableError(absl::StrCat("cannot write ", temp));
    out << contents;
    out.flush();
    if (!out) {
      std::remove(temp.c_str());
      return absl::DataLossError(absl::StrCat("short write to ", temp));
    }
  }
  if (std::rename(temp.c_str(), path.c_str()) != 0) {
    std::remove(temp.c_str());
    return absl::UnavailableError(absl::StrCat("cannot rename onto ", path));
  }
  return absl::OkStatus();
}

}  // namespace htpl::cli
