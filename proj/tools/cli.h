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

#ifndef HTPL_TOOLS_CLI_H_
#define HTPL_TOOLS_CLI_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "csv.h"

namespace htpl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct ExperimentConfig {
  std::string experiment;
  std::string instance_path;  // empty for experiments with a built-in instance
  std::string output_path;
  uint64_t seed = 1;
  std::map<std::string, std::string> parameters;
};

// Registered experiment names, in help order.
const std::vector<std::string>& ExperimentNames();

struct ExperimentOutput {
  CsvTable table;
  // JSON written next to the CSV as <out>.channels.json, when present.
  std::optional<std::string> channels_json;
};

// Status marked as a usage problem (bad flags, unknown names, unknown or
// malformed parameters); such failures exit with kExitUsage.
absl::Status UsageError(absl::string_view message);
bool IsUsageError(const absl::Status& status);

// Computes the experiment without touching the output path.
absl::StatusOr<ExperimentOutput> ComputeExperiment(
    const ExperimentConfig& config);

// ComputeExperiment followed by atomic writes of the CSV and any sidecar.
absl::Status RunExperiment(const ExperimentConfig& config);

// Human-readable diagnostics for an instance file, one check per line.
// Fails only when the file cannot be read or parsed; failed checks are
// reported in the text and flagged through `all_passed`.
absl::StatusOr<std::string> ValidateInstance(const std::string& path,
                                             bool* all_passed);

// One-line machine-parsable error record.
std::string ErrorRecord(const absl::Status& status);

// Entry point of the htpl binary.
int Main(int argc, char** argv);

}  // namespace htpl::cli

#endif  // HTPL_TOOLS_CLI_H_
