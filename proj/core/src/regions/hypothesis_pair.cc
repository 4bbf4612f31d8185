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

#include "htpl/regions/hypothesis_pair.h"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/numeric.h"

namespace htpl {

absl::StatusOr<Distortion> Distortion::Create(
    const std::vector<std::vector<double>>& table, double d_max) {
  if (table.empty() || table[0].empty()) {
    return absl::InvalidArgumentError("empty distortion table");
  }
  if (!std::isfinite(d_max) || d_max < 0.0) {
    return absl::InvalidArgumentError("d_max must be finite and nonnegative");
  }
  const size_t cols = table[0].size();
  std::vector<double> flat;
  for (size_t s = 0; s < table.size(); ++s) {
    if (table[s].size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("distortion row ", s, " has the wrong length"));
    }
    for (size_t t = 0; t < cols; ++t) {
      const double d = table[s][t];
      if (!std::isfinite(d) || d < 0.0 || d > d_max) {
        return absl::InvalidArgumentError(
            absl::StrCat("distortion d(", s, ",", t, ") = ", d, " outside [0, ",
                         d_max, "]"));
      }
      flat.push_back(d);
    }
  }
  return Distortion(static_cast<int>(table.size()), static_cast<int>(cols),
                    std::move(flat), d_max);
}

Distortion Distortion::Hamming(int size) {
  std::vector<double> flat(static_cast<size_t>(size) * size, 1.0);
  for (int s = 0; s < size; ++s) flat[static_cast<size_t>(s) * size + s] = 0.0;
  return Distortion(size, size, std::move(flat), 1.0);
}

std::vector<std::vector<double>> Distortion::Table() const {
  std::vector<std::vector<double>> rows(source_size_);
  for (int s = 0; s < source_size_; ++s) {
    for (int t = 0; t < estimate_size_; ++t) rows[s].push_back((*this)(s, t));
  }
  return rows;
}

absl::StatusOr<HypothesisPair> HypothesisPair::Create(
    JointPmf p, JointPmf q, std::optional<Distortion> distortion) {
  if (p.axes() != q.axes()) {
    return absl::InvalidArgumentError(
        "null and alternate laws must have identical axes");
  }
  if (!p.HasAxis("S") || !p.HasAxis("U")) {
    return absl::InvalidArgumentError("laws must contain axes 'S' and 'U'");
  }
  std::vector<std::string> side;
  for (const Axis& a : p.axes()) {
    if (a.name != "S" && a.name != "U") side.push_back(a.name);
  }
  if (distortion.has_value() && distortion->source_size() != *p.AxisSize("S")) {
    return absl::InvalidArgumentError(
        absl::StrCat("distortion table has ", distortion->source_size(),
                     " rows but |S| = ", *p.AxisSize("S")));
  }
  const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
      {"S", {"S"}}, {"U", {"U"}}, {"V", side}};
  absl::StatusOr<JointPmf> p_suv = p.Grouped(groups);
  if (!p_suv.ok()) return p_suv.status();
  absl::StatusOr<JointPmf> q_suv = q.Grouped(groups);
  if (!q_suv.ok()) return q_suv.status();
  absl::StatusOr<Pmf> p_u = p.MarginalPmf("U");
  absl::StatusOr<Pmf> q_u = q.MarginalPmf("U");
  const bool equal =
      ProbsEqual(p_u->probs(), q_u->probs(), kDistributionEqualityTolerance);
  return HypothesisPair(std::move(p), std::move(q), std::move(distortion),
                        std::move(side), *std::move(p_suv), *std::move(q_suv),
                        equal);
}

}  // namespace htpl
