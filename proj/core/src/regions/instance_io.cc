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

#include "htpl/regions/instance_io.h"

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json_internal.h"

namespace htpl {

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::StatusOr<Instance> ParseInstance(absl::string_view text) {
  absl::StatusOr<nlohmann::json> root = internal::ParseJson(text);
  if (!root.ok()) return root.status();
  if (!root->is_object()) {
    return absl::InvalidArgumentError("instance: expected a json object");
  }
  for (const char* field : {"p_suv", "q_suv"}) {
    if (!root->contains(field)) {
      return absl::InvalidArgumentError(
          absl::StrCat("instance: missing field '", field, "'"));
    }
  }
  absl::StatusOr<JointPmf> p =
      internal::JointPmfFromJsonValue((*root)["p_suv"], "p_suv");
  if (!p.ok()) return p.status();
  absl::StatusOr<JointPmf> q =
      internal::JointPmfFromJsonValue((*root)["q_suv"], "q_suv");
  if (!q.ok()) return q.status();

  std::optional<Distortion> distortion;
  if (root->contains("distortion")) {
    const nlohmann::json& d = (*root)["distortion"];
    if (!d.is_object() || !d.contains("table") || !d["table"].is_array()) {
      return absl::InvalidArgumentError(
          "distortion: expected {\"table\": [[...]], \"d_max\": number}");
    }
    std::vector<std::vector<double>> table;
    double largest = 0.0;
    for (size_t i = 0; i < d["table"].size(); ++i) {
      const nlohmann::json& row = d["table"][i];
      if (!row.is_array()) {
        return absl::InvalidArgumentError(
            absl::StrCat("distortion.table[", i, "]: expected an array"));
      }
      std::vector<double> values;
      for (size_t j = 0; j < row.size(); ++j) {
        if (!row[j].is_number()) {
          return absl::InvalidArgumentError(
              absl::StrCat("distortion.table[", i, "][", j, "]: not a number"));
        }
        values.push_back(row[j].get<double>());
        largest = std::max(largest, values.back());
      }
      table.push_back(std::move(values));
    }
    double d_max = largest;
    if (d.contains("d_max")) {
      if (!d["d_max"].is_number()) {
        return absl::InvalidArgumentError("distortion.d_max: not a number");
      }
      d_max = d["d_max"].get<double>();
    }
    absl::StatusOr<Distortion> parsed = Distortion::Create(table, d_max);
    if (!parsed.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("distortion: ", parsed.status().message()));
    }
    distortion = *std::move(parsed);
  }

  absl::StatusOr<HypothesisPair> pair =
      HypothesisPair::Create(*std::move(p), *std::move(q), distortion);
  if (!pair.ok()) return pair.status();

  std::optional<Channel> w_channel;
  if (root->contains("w_channel")) {
    absl::StatusOr<Channel> channel =
        internal::ChannelFromJsonValue((*root)["w_channel"], "w_channel");
    if (!channel.ok()) return channel.status();
    if (channel->input_size() != pair->u_size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("w_channel: ", channel->input_size(),
                       " rows but |U| = ", pair->u_size()));
    }
    w_channel = *std::move(channel);
  }

  std::map<std::string, std::string> labels;
  if (root->contains("labels")) {
    const nlohmann::json& l = (*root)["labels"];
    if (!l.is_object()) {
      return absl::InvalidArgumentError("labels: expected an object");
    }
    for (auto it = l.begin(); it != l.end(); ++it) {
      labels[it.key()] = it.value().is_string() ? it.value().get<std::string>()
                                                : it.value().dump();
    }
  }
  return Instance{*std::move(pair), std::move(w_channel), std::move(labels)};
}

absl::StatusOr<Instance> LoadInstance(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<Instance> instance = ParseInstance(*text);
  if (!instance.ok()) {
    return absl::Status(instance.status().code(),
                        absl::StrCat(path, ": ", instance.status().message()));
  }
  return instance;
}

std::string InstanceToJson(const Instance& instance) {
  nlohmann::json root;
  root["p_suv"] = internal::JointPmfToJsonValue(instance.pair.p());
  root["q_suv"] = internal::JointPmfToJsonValue(instance.pair.q());
  if (instance.pair.distortion().has_value()) {
    root["distortion"] = {{"table", instance.pair.distortion()->Table()},
                          {"d_max", instance.pair.distortion()->d_max()}};
  }
  if (instance.w_channel.has_value()) {
    root["w_channel"] = internal::ChannelToJsonValue(*instance.w_channel);
  }
  if (!instance.labels.empty()) root["labels"] = instance.labels;
  return root.dump(2);
}

}  // namespace htpl
