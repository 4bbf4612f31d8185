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

#ifndef HTPL_REGIONS_EXPONENTS_H_
#define HTPL_REGIONS_EXPONENTS_H_

#include <optional>

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/coupling.h"
#include "htpl/regions/hypothesis_pair.h"

// Error exponents of the quantize-and-bin scheme, in nats. The channel maps
// U to an auxiliary W; V denotes the merged side information of the pair.
namespace htpl {

struct ExponentResult {
  // Extended real; +inf is an exact value, not an overflow.
  double value = 0.0;
  // Minimizing law over (U, V, W), or (U, V) for the zero-rate exponent.
  std::optional<JointPmf> coupling;
  double max_residual = 0.0;
  bool converged = true;
};

// Reference measure Q_UV x P_{W|U} on axes (U, V, W).
absl::StatusOr<JointPmf> ExponentReference(const HypothesisPair& pair,
                                           const Channel& w);
// P_UV x P_{W|U} on axes (U, V, W).
absl::StatusOr<JointPmf> NullLawWithAuxiliary(const HypothesisPair& pair,
                                              const Channel& w);

// The E1 program: min D(P~ || Q_UV P_{W|U}) subject to P~_UW = P_UW and
// P~_VW = P_VW.
absl::StatusOr<CouplingProblem> E1Problem(const HypothesisPair& pair,
                                          const Channel& w);
absl::StatusOr<ExponentResult> ExponentE1(const HypothesisPair& pair,
                                          const Channel& w,
                                          const CouplingOptions& options = {});

// The divergence part of E2: min D(P~ || Q_UV P_{W|U}) subject to
// P~_UW = P_UW, P~_V = P_V and H(W~|V~) >= H_P(W|V).
absl::StatusOr<CouplingProblem> L2Problem(const HypothesisPair& pair,
                                          const Channel& w);
absl::StatusOr<ExponentResult> L2Divergence(
    const HypothesisPair& pair, const Channel& w,
    const CouplingOptions& options = {});

// +inf when I_P(U;W) <= rate, otherwise the L2 divergence plus
// rate - I_P(U;W|V).
absl::StatusOr<ExponentResult> ExponentE2(double rate,
                                          const HypothesisPair& pair,
                                          const Channel& w,
                                          const CouplingOptions& options = {});

// min(E1, E2).
absl::StatusOr<double> KappaStar(double rate, const HypothesisPair& pair,
                                 const Channel& w);

// min D(P~_UV || Q_UV) over couplings of p_u and p_v. The first axis of q_uv
// describes U and the second V.
absl::StatusOr<ExponentResult> ZeroRateExponent(
    const Pmf& p_u, const Pmf& p_v, const JointPmf& q_uv,
    const CouplingOptions& options = {});
absl::StatusOr<ExponentResult> ZeroRateExponent(const HypothesisPair& pair);

}  // namespace htpl

#endif  // HTPL_REGIONS_EXPONENTS_H_
