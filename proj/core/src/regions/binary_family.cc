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

#include "htpl/regions/binary_family.h"

#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/binary.h"

namespace htpl {

absl::StatusOr<BinaryFamilyPoint> BinaryFamilyClosedForm(double p, double q,
                                                         double r) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("p and q must lie in [0, 1], got ", p, ", ", q));
  }
  if (!(r >= 0.0 && r <= 0.5)) {
    return absl::OutOfRangeError(
        absl::StrCat("r must lie in [0, 1/2], got ", r));
  }
  const double qr = *Star(q, r);
  const double pqr = *Star(p, qr);
  BinaryFamilyPoint point;
  point.rate_bits = 1.0 - *BinaryEntropy(r);
  point.kappa_bits = 1.0 - *BinaryEntropy(*Star(*Star(r, q), p));
  point.lambda0_bits =
      *BinaryEntropy(p) + *BinaryEntropy(qr) - *BinaryEntropy(pqr);
  return point;
}

absl::StatusOr<Channel> BinarySymmetricChannel(double crossover) {
  return Channel::Create(
      {{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

absl::StatusOr<HypothesisPair> BinaryFamilyInstance(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("p and q must lie in [0, 1], got ", p, ", ", q));
  }
  std::vector<double> null_law;
  std::vector<double> alt_law;
  for (int s = 0; s < 2; ++s) {
    for (int u = 0; u < 2; ++u) {
      const double su = 0.5 * (s == u ? 1.0 - q : q);
      for (int y = 0; y < 2; ++y) {
        null_law.push_back(su * (y == s ? 1.0 - p : p));
        alt_law.push_back(su * 0.5);
      }
    }
  }
  const std::vector<Axis> axes = {{"S", 2}, {"U", 2}, {"Y", 2}};
  absl::StatusOr<JointPmf> pl = JointPmf::Create(axes, null_law);
  if (!pl.ok()) return pl.status();
  absl::StatusOr<JointPmf> ql = JointPmf::Create(axes, alt_law);
  if (!ql.ok()) return ql.status();
  return HypothesisPair::Create(*std::move(pl), *std::move(ql),
                                Distortion::Hamming(2));
}

HypothesisPair PerfectPrivacyInstance() {
  std::vector<double> null_law;
  std::vector<double> alt_law;
  for (int s = 0; s < 4; ++s) {
    for (int u = 0; u < 4; ++u) {
      const double su = (s / 2 == u / 2) ? 0.125 : 0.0;
      for (int y = 0; y < 2; ++y) {
        null_law.push_back(su * (y == u % 2 ? 1.0 : 0.0));
        alt_law.push_back(su * 0.5);
      }
    }
  }
  const std::vector<Axis> axes = {{"S", 4}, {"U", 4}, {"Y", 2}};
  return *HypothesisPair::Create(*JointPmf::Create(axes, null_law),
                                 *JointPmf::Create(axes, alt_law),
                                 Distortion::Hamming(4));
}

}  // namespace htpl
