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

#include "htpl/probcore/json_io.h"

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json_internal.h"

namespace htpl {
namespace internal {

absl::StatusOr<nlohmann::json> ParseJson(absl::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    size_t line = 1;
    size_t column = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return absl::InvalidArgumentError(absl::StrCat("json parse error at line ",
                                                   line, ", column ", column,
                                                   ": ", e.what()));
  }
}

absl::StatusOr<JointPmf> JointPmfFromJsonValue(const nlohmann::json& value,
                                               absl::string_view context) {
  if (!value.is_object() || !value.contains("axes") ||
      !value.contains("probs")) {
    return absl::InvalidArgumentError(
        absl::StrCat(context, ": expected object with 'axes' and 'probs'"));
  }
  const nlohmann::json& axes_json = value["axes"];
  const nlohmann::json& probs_json = value["probs"];
  if (!axes_json.is_array() || !probs_json.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat(context, ": 'axes' and 'probs' must be arrays"));
  }
  std::vector<Axis> axes;
  for (size_t i = 0; i < axes_json.size(); ++i) {
    const nlohmann::json& a = axes_json[i];
    if (!a.is_object() || !a.contains("name") || !a.contains("size") ||
        !a["name"].is_string() || !a["size"].is_number_integer()) {
      return absl::InvalidArgumentError(
          absl::StrCat(context, ".axes[", i,
                       "]: expected {\"name\": string, \"size\": int}"));
    }
    axes.push_back(Axis{a["name"].get<std::string>(), a["size"].get<int>()});
  }
  std::vector<double> probs;
  for (size_t i = 0; i < probs_json.size(); ++i) {
    if (!probs_json[i].is_number()) {
      return absl::InvalidArgumentError(
          absl::StrCat(context, ".probs[", i, "]: not a number"));
    }
    probs.push_back(probs_json[i].get<double>());
  }
  absl::StatusOr<JointPmf> pmf =
      JointPmf::Create(std::move(axes), std::move(probs));
  if (!pmf.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(context, ": ", pmf.status().message()));
  }
  return pmf;
}

nlohmann::json JointPmfToJsonValue(const JointPmf& pmf) {
  nlohmann::json axes = nlohmann::json::array();
  for (const Axis& a : pmf.axes()) {
    axes.push_back({{"name", a.name}, {"size", a.size}});
  }
  nlohmann::json probs = nlohmann::json::array();
  for (double p : pmf.probs()) probs.push_back(p);
  return {{"axes", axes}, {"probs", probs}};
}

absl::StatusOr<Channel> ChannelFromJsonValue(const nlohmann::json& value,
                                             absl::string_view context) {
  if (!value.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat(context, ": expected an array of rows"));
  }
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_array()) {
      return absl::InvalidArgumentError(
          absl::StrCat(context, "[", i, "]: expected an array"));
    }
    std::vector<double> row;
    for (size_t j = 0; j < value[i].size(); ++j) {
      if (!value[i][j].is_number()) {
        return absl::InvalidArgumentError(
            absl::StrCat(context, "[", i, "][", j, "]: not a number"));
      }
      row.push_back(value[i][j].get<double>());
    }
    rows.push_back(std::move(row));
  }
  absl::StatusOr<Channel> channel = Channel::Create(rows);
  if (!channel.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(context, ": ", channel.status().message()));
  }
  return channel;
}

nlohmann::json ChannelToJsonValue(const Channel& channel) {
  return nlohmann::json(channel.Rows());
}

}  // namespace internal

absl::StatusOr<JointPmf> JointPmfFromJson(absl::string_view text) {
  absl::StatusOr<nlohmann::json> value = internal::ParseJson(text);
  if (!value.ok()) return value.status();
  return internal::JointPmfFromJsonValue(*value, "pmf");
}

std::string JointPmfToJson(const JointPmf& pmf) {
  return internal::JointPmfToJsonValue(pmf).dump();
}

absl::StatusOr<Channel> ChannelFromJson(absl::string_view text) {
  absl::StatusOr<nlohmann::json> value = internal::ParseJson(text);
  if (!value.ok()) return value.status();
  return internal::ChannelFromJsonValue(*value, "channel");
}

std::string ChannelToJson(const Channel& channel) {
  return internal::ChannelToJsonValue(channel).dump();
}

}  // namespace htpl
