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

#ifndef HTPL_SRC_JSON_INTERNAL_H_
#define HTPL_SRC_JSON_INTERNAL_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "htpl/probcore/pmf.h"
#include "json.hpp"

namespace htpl::internal {

// `context` names the field being parsed and is prefixed to error messages.
absl::StatusOr<JointPmf> JointPmfFromJsonValue(const nlohmann::json& value,
                                               absl::string_view context);
nlohmann::json JointPmfToJsonValue(const JointPmf& pmf);

absl::StatusOr<Channel> ChannelFromJsonValue(const nlohmann::json& value,
                                             absl::string_view context);
nlohmann::json ChannelToJsonValue(const Channel& channel);

absl::StatusOr<nlohmann::json> ParseJson(absl::string_view text);

}  // namespace htpl::internal

#endif  // HTPL_SRC_JSON_INTERNAL_H_
