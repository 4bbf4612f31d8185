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

#ifndef HTPL_REGIONS_TRADEOFF_H_
#define HTPL_REGIONS_TRADEOFF_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/hypothesis_pair.h"

namespace htpl {

enum class PrivacyKind { kEquivocation, kDistortion };

// A (rate, exponent, privacy) tuple in nats per sample; distortion-valued
// privacy is in distortion units.
struct TradeoffPoint {
  double rate = 0.0;
  double exponent = 0.0;
  double privacy0 = 0.0;
  double privacy1 = 0.0;
  PrivacyKind privacy_kind = PrivacyKind::kEquivocation;
  // False when rate < I_P(W;U|V); the remaining fields are still evaluated.
  bool feasible = true;
  // I_P(W;U|V), the smallest rate at which the point is feasible.
  double rate_needed = 0.0;
};

// Exponent max(0, kappa*), privacy0 = H_P(S|W,V) and privacy1 = H_Q(S|W,V)
// when P_U = Q_U, otherwise H_Q(S|V).
absl::StatusOr<TradeoffPoint> EquivocationBoundPoint(const HypothesisPair& pair,
                                                     const Channel& w,
                                                     double rate);

// As EquivocationBoundPoint with Bayes-optimal distortions in place of
// entropies.
// Requires a distortion table.
absl::StatusOr<TradeoffPoint> DistortionBoundPoint(const HypothesisPair& pair,
                                                   const Channel& w,
                                                   double rate);

struct TaciCoordinates {
  double rate_needed = 0.0;    // I_P(W;U|Z)
  double exponent = 0.0;       // I_P(W;Y|Z)
  double equivocation0 = 0.0;  // H_P(S|W,Y,Z)
};

// `p_suyz` carries axes S, U, Y and optionally Z (absent means constant).
absl::StatusOr<TaciCoordinates> TaciPoint(const JointPmf& p_suyz,
                                          const Channel& w);

struct ZeroRatePrivacyLimits {
  // Present only when the pair has a distortion table.
  std::optional<double> delta0_max;
  std::optional<double> delta1_max;
  double lambda0_max = 0.0;  // H_P(S|V)
  double lambda1_max = 0.0;  // H_Q(S|V)
};

absl::StatusOr<ZeroRatePrivacyLimits> ZeroRatePrivacy(
    const HypothesisPair& pair);

struct BayesDecision {
  int estimate = 0;
  double expected_distortion = 0.0;
};

// argmin over s_hat of sum_s posterior(s) d(s, s_hat); ties go to the
// smallest index.
absl::StatusOr<BayesDecision> BayesEstimator(const Pmf& posterior,
                                             const Distortion& d);

// Same rule for unnormalized nonnegative weights; expected_distortion is then
// the weighted (unnormalized) risk.
BayesDecision BayesDecisionForWeights(absl::Span<const double> weights,
                                      const Distortion& d);

// min over estimators phi of E d(S, phi(given)) under `law`, which must carry
// an axis "S".
absl::StatusOr<double> BayesDistortion(const JointPmf& law,
                                       const std::vector<std::string>& given,
                                       const Distortion& d);

}  // namespace htpl

#endif  // HTPL_REGIONS_TRADEOFF_H_
