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

#include "htpl/schemes/zero_rate.h"

#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "htpl/probcore/numeric.h"
#include "htpl/probcore/typicality.h"

namespace htpl {

absl::StatusOr<int> ZeroRateEncode(const SequenceSample& u, const Pmf& p_u,
                                   double delta) {
  absl::StatusOr<bool> typical = IsTypical(u, p_u, delta);
  if (!typical.ok()) return typical.status();
  return *typical ? 1 : 0;
}

absl::StatusOr<Hypothesis> ZeroRateDetect(int bit, const SequenceSample& v,
                                          const Pmf& p_v, double delta) {
  if (bit != 0 && bit != 1)
    return absl::InvalidArgumentError("bit must be 0 or 1");
  if (bit == 0) return Hypothesis::kAlternate;
  absl::StatusOr<bool> typical = IsTypical(v, p_v, delta);
  if (!typical.ok()) return typical.status();
  return *typical ? Hypothesis::kNull : Hypothesis::kAlternate;
}

absl::StatusOr<ZeroRateErrors> ZeroRateErrorProbabilities(
    const HypothesisPair& pair, double delta, int n) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  absl::StatusOr<Pmf> p_u = pair.p_suv().MarginalPmf("U");
  if (!p_u.ok()) return p_u.status();
  absl::StatusOr<Pmf> p_v = pair.p_suv().MarginalPmf("V");
  if (!p_v.ok()) return p_v.status();
  const int us = pair.u_size();
  const int vs = pair.v_size();
  const int parts = us * vs;
  absl::StatusOr<uint64_t> count = CompositionCount(n, parts);
  if (!count.ok()) return count.status();
  double accept[2] = {0.0, 0.0};
  for (int h = 0; h < 2; ++h) {
    absl::StatusOr<JointPmf> uv =
        pair.law_suv(h == 0 ? Hypothesis::kNull : Hypothesis::kAlternate)
            .Marginal({"U", "V"});
    if (!uv.ok()) return uv.status();
    CompensatedSum total;
    for (uint64_t rank = 0; rank < *count; ++rank) {
      absl::StatusOr<std::vector<int>> c = CompositionUnrank(rank, n, parts);
      if (!c.ok()) return c.status();
      std::vector<int> u_counts(us, 0), v_counts(vs, 0);
      for (int k = 0; k < parts; ++k) {
        u_counts[k / vs] += (*c)[k];
        v_counts[k % vs] += (*c)[k];
      }
      if (!CountsAreTypical(u_counts, n, p_u->probs(), delta) ||
          !CountsAreTypical(v_counts, n, p_v->probs(), delta)) {
        continue;
      }
      double log_p = std::lgamma(n + 1.0);
      bool possible = true;
      for (int k = 0; k < parts && possible; ++k) {
        log_p -= std::lgamma((*c)[k] + 1.0);
        if ((*c)[k] == 0) continue;
        if ((*uv)[k] <= 0.0) {
          possible = false;
        } else {
          log_p += (*c)[k] * std::log((*uv)[k]);
        }
      }
      if (possible) total.Add(std::exp(log_p));
    }
    accept[h] = total.Total();
  }
  return ZeroRateErrors{1.0 - accept[0], accept[1]};
}

}  // namespace htpl
