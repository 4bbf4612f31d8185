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

#ifndef HTPL_PROBCORE_JSON_IO_H_
#define HTPL_PROBCORE_JSON_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "htpl/probcore/pmf.h"

namespace htpl {

// {"axes":[{"name":..,"size":..},...],"probs":[...row-major...]}
absl::StatusOr<JointPmf> JointPmfFromJson(absl::string_view text);
std::string JointPmfToJson(const JointPmf& pmf);

absl::StatusOr<Channel> ChannelFromJson(absl::string_view text);
std::string ChannelToJson(const Channel& channel);

}  // namespace htpl

#endif  // HTPL_PROBCORE_JSON_IO_H_
