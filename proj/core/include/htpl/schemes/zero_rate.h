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

#ifndef HTPL_SCHEMES_ZERO_RATE_H_
#define HTPL_SCHEMES_ZERO_RATE_H_

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/hypothesis_pair.h"

namespace htpl {

// One-bit typicality scheme: the encoder sends 1(u is delta-typical for P_U)
// and the detector accepts the null iff the bit is 1 and v is delta-typical
// for P_V.
absl::StatusOr<int> ZeroRateEncode(const SequenceSample& u, const Pmf& p_u,
                                   double delta);
absl::StatusOr<Hypothesis> ZeroRateDetect(int bit, const SequenceSample& v,
                                          const Pmf& p_v, double delta);

struct ZeroRateErrors {
  double alpha = 0.0;
  double beta = 0.0;
};

// Exact error probabilities of the zero-rate test at blocklength n, summed
// over joint types of (u^n, v^n). Thresholds use the null marginals.
absl::StatusOr<ZeroRateErrors> ZeroRateErrorProbabilities(
    const HypothesisPair& pair, double delta, int n);

}  // namespace htpl

#endif  // HTPL_SCHEMES_ZERO_RATE_H_
