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

#include "htpl/regions/tradeoff.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/numeric.h"
#include "htpl/regions/exponents.h"

namespace htpl {
namespace {

struct AuxiliaryLaws {
  JointPmf p;  // axes S, U, V, W
  JointPmf q;
};

absl::StatusOr<AuxiliaryLaws> AttachAuxiliary(const HypothesisPair& pair,
                                              const Channel& w) {
  if (w.input_size() != pair.u_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("auxiliary channel input size ", w.input_size(),
                     " does not match |U| = ", pair.u_size()));
  }
  absl::StatusOr<JointPmf> p = pair.p_suv().WithChannel("U", w, "W");
  if (!p.ok()) return p.status();
  absl::StatusOr<JointPmf> q = pair.q_suv().WithChannel("U", w, "W");
  if (!q.ok()) return q.status();
  return AuxiliaryLaws{*std::move(p), *std::move(q)};
}

// Fills rate, exponent, feasibility and rate_needed.
absl::Status FillExponent(const HypothesisPair& pair, const Channel& w,
                          const JointPmf& p_suvw, double rate,
                          TradeoffPoint& point) {
  if (!(rate >= 0.0)) return absl::InvalidArgumentError("rate must be >= 0");
  absl::StatusOr<double> needed =
      ConditionalMutualInformation(p_suvw, {"W"}, {"U"}, {"V"});
  if (!needed.ok()) return needed.status();
  absl::StatusOr<double> kappa = KappaStar(rate, pair, w);
  if (!kappa.ok()) return kappa.status();
  point.rate = rate;
  point.rate_needed = *needed;
  point.feasible = rate >= *needed - 1e-12;
  // E2 goes negative only below rate_needed; no test does worse than
  // exponent 0, so the reported value is clamped there.
  point.exponent = std::max(0.0, *kappa);
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<TradeoffPoint> EquivocationBoundPoint(const HypothesisPair& pair,
                                                     const Channel& w,
                                                     double rate) {
  absl::StatusOr<AuxiliaryLaws> laws = AttachAuxiliary(pair, w);
  if (!laws.ok()) return laws.status();
  TradeoffPoint point;
  point.privacy_kind = PrivacyKind::kEquivocation;
  if (absl::Status s = FillExponent(pair, w, laws->p, rate, point); !s.ok()) {
    return s;
  }
  absl::StatusOr<double> lambda0 =
      ConditionalEntropy(laws->p, {"S"}, {"W", "V"});
  if (!lambda0.ok()) return lambda0.status();
  absl::StatusOr<double> lambda1 =
      pair.u_marginals_equal() ? ConditionalEntropy(laws->q, {"S"}, {"W", "V"})
                               : ConditionalEntropy(laws->q, {"S"}, {"V"});
  if (!lambda1.ok()) return lambda1.status();
  point.privacy0 = *lambda0;
  point.privacy1 = *lambda1;
  return point;
}

absl::StatusOr<TradeoffPoint> DistortionBoundPoint(const HypothesisPair& pair,
                                                   const Channel& w,
                                                   double rate) {
  if (!pair.distortion().has_value()) {
    return absl::FailedPreconditionError("pair has no distortion table");
  }
  const Distortion& d = *pair.distortion();
  absl::StatusOr<AuxiliaryLaws> laws = AttachAuxiliary(pair, w);
  if (!laws.ok()) return laws.status();
  TradeoffPoint point;
  point.privacy_kind = PrivacyKind::kDistortion;
  if (absl::Status s = FillExponent(pair, w, laws->p, rate, point); !s.ok()) {
    return s;
  }
  absl::StatusOr<double> delta0 = BayesDistortion(laws->p, {"W", "V"}, d);
  if (!delta0.ok()) return delta0.status();
  absl::StatusOr<double> delta1 = pair.u_marginals_equal()
                                      ? BayesDistortion(laws->q, {"W", "V"}, d)
                                      : BayesDistortion(laws->q, {"V"}, d);
  if (!delta1.ok()) return delta1.status();
  point.privacy0 = *delta0;
  point.privacy1 = *delta1;
  return point;
}

absl::StatusOr<TaciCoordinates> TaciPoint(const JointPmf& p_suyz,
                                          const Channel& w) {
  for (const char* axis : {"S", "U", "Y"}) {
    if (!p_suyz.HasAxis(axis)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "testing-against-independence law lacks axis '", axis, "'"));
    }
  }
  absl::StatusOr<JointPmf> j = p_suyz.WithChannel("U", w, "W");
  if (!j.ok()) return j.status();
  const std::vector<std::string> z = p_suyz.HasAxis("Z")
                                         ? std::vector<std::string>{"Z"}
                                         : std::vector<std::string>{};
  std::vector<std::string> wyz = {"W", "Y"};
  wyz.insert(wyz.end(), z.begin(), z.end());
  absl::StatusOr<double> rate =
      ConditionalMutualInformation(*j, {"W"}, {"U"}, z);
  if (!rate.ok()) return rate.status();
  absl::StatusOr<double> exponent =
      ConditionalMutualInformation(*j, {"W"}, {"Y"}, z);
  if (!exponent.ok()) return exponent.status();
  absl::StatusOr<double> equivocation = ConditionalEntropy(*j, {"S"}, wyz);
  if (!equivocation.ok()) return equivocation.status();
  return TaciCoordinates{*rate, *exponent, *equivocation};
}

absl::StatusOr<ZeroRatePrivacyLimits> ZeroRatePrivacy(
    const HypothesisPair& pair) {
  ZeroRatePrivacyLimits limits;
  absl::StatusOr<double> l0 = ConditionalEntropy(pair.p_suv(), {"S"}, {"V"});
  if (!l0.ok()) return l0.status();
  absl::StatusOr<double> l1 = ConditionalEntropy(pair.q_suv(), {"S"}, {"V"});
  if (!l1.ok()) return l1.status();
  limits.lambda0_max = *l0;
  limits.lambda1_max = *l1;
  if (pair.distortion().has_value()) {
    absl::StatusOr<double> d0 =
        BayesDistortion(pair.p_suv(), {"V"}, *pair.distortion());
    if (!d0.ok()) return d0.status();
    absl::StatusOr<double> d1 =
        BayesDistortion(pair.q_suv(), {"V"}, *pair.distortion());
    if (!d1.ok()) return d1.status();
    limits.delta0_max = *d0;
    limits.delta1_max = *d1;
  }
  return limits;
}

BayesDecision BayesDecisionForWeights(absl::Span<const double> weights,
                                      const Distortion& d) {
  BayesDecision best{0, kInfinity};
  for (int t = 0; t < d.estimate_size(); ++t) {
    CompensatedSum risk;
    for (size_t s = 0; s < weights.size(); ++s) {
      risk.Add(weights[s] * d(static_cast<int>(s), t));
    }
    if (risk.Total() < best.expected_distortion) {
      best = BayesDecision{t, risk.Total()};
    }
  }
  return best;
}

absl::StatusOr<BayesDecision> BayesEstimator(const Pmf& posterior,
                                             const Distortion& d) {
  if (posterior.size() != d.source_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("posterior over ", posterior.size(),
                     " letters but table has ", d.source_size(), " rows"));
  }
  return BayesDecisionForWeights(posterior.probs(), d);
}

absl::StatusOr<double> BayesDistortion(const JointPmf& law,
                                       const std::vector<std::string>& given,
                                       const Distortion& d) {
  std::vector<std::string> axes = given;
  axes.push_back("S");
  absl::StatusOr<JointPmf> joint = law.Marginal(axes);
  if (!joint.ok()) return joint.status();
  const int s_size = joint->axes().back().size;
  if (s_size != d.source_size()) {
    return absl::InvalidArgumentError("distortion table does not cover S");
  }
  CompensatedSum total;
  for (size_t base = 0; base < joint->num_cells(); base += s_size) {
    total.Add(BayesDecisionForWeights(joint->probs().subspan(base, s_size), d)
                  .expected_distortion);
  }
  return std::max(0.0, total.Total());
}

}  // namespace htpl
