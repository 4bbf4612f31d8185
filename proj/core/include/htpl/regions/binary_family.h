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

#ifndef HTPL_REGIONS_BINARY_FAMILY_H_
#define HTPL_REGIONS_BINARY_FAMILY_H_

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/hypothesis_pair.h"

namespace htpl {

// Boundary point of the binary repetition family, in bits.
struct BinaryFamilyPoint {
  double rate_bits = 0.0;
  double kappa_bits = 0.0;
  double lambda0_bits = 0.0;
};

// (1 - h(r), 1 - h((r * q) * p), h(p) + h(q * r) - h(p * (q * r))) for
// p, q in [0, 1] and r in [0, 1/2].
absl::StatusOr<BinaryFamilyPoint> BinaryFamilyClosedForm(double p, double q,
                                                         double r);

// Binary testing against independence instance: U uniform, S = U through a
// BSC(q), Y = S through a BSC(p) under the null and Y uniform and independent
// under the alternate. Axes S, U, Y; Hamming distortion.
absl::StatusOr<HypothesisPair> BinaryFamilyInstance(double p, double q);

// Four-letter S and U with S, U equal in pairs and Y = U mod 2 under the
// null; the alternate draws Y independently from its null marginal. Axes S,
// U, Y; Hamming distortion.
HypothesisPair PerfectPrivacyInstance();

absl::StatusOr<Channel> BinarySymmetricChannel(double crossover);

}  // namespace htpl

#endif  // HTPL_REGIONS_BINARY_FAMILY_H_
