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

#ifndef HTPL_REGIONS_INSTANCE_IO_H_
#define HTPL_REGIONS_INSTANCE_IO_H_

#include <map>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/hypothesis_pair.h"

namespace htpl {

// Instance file contents:
//   {"p_suv": <joint pmf>, "q_suv": <joint pmf>,
//    "distortion": {"table": [[...]], "d_max": x},   (optional)
//    "w_channel": [[...]],                            (optional)
//    "labels": {"key": "value", ...}}                 (optional)
struct Instance {
  HypothesisPair pair;
  std::optional<Channel> w_channel;
  std::map<std::string, std::string> labels;
};

absl::StatusOr<Instance> ParseInstance(absl::string_view text);
absl::StatusOr<Instance> LoadInstance(const std::string& path);
std::string InstanceToJson(const Instance& instance);

absl::StatusOr<std::string> ReadFile(const std::string& path);

}  // namespace htpl

#endif  // HTPL_REGIONS_INSTANCE_IO_H_
