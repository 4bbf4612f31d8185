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

#include "htpl/adversary/counterexample.h"

#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/adversary/scheme_model.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/numeric.h"
#include "htpl/probcore/typicality.h"
#include "htpl/schemes/timeshare.h"

namespace htpl {

absl::StatusOr<double> TimeshareTypeOneError(const JointPmf& p_uv, double delta,
                                             double delta_prime,
                                             double epsilon_star, int n) {
  if (p_uv.rank() != 2)
    return absl::InvalidArgumentError("p_uv must have two axes");
  const int us = p_uv.axes()[0].size;
  const int vs = p_uv.axes()[1].size;
  absl::StatusOr<Pmf> p_u = p_uv.MarginalPmf(p_uv.axes()[0].name);
  if (!p_u.ok()) return p_u.status();
  const int parts = us * vs;
  absl::StatusOr<uint64_t> count = CompositionCount(n, parts);
  if (!count.ok()) return count.status();
  CompensatedSum accepted;
  for (uint64_t rank = 0; rank < *count; ++rank) {
    absl::StatusOr<std::vector<int>> c = CompositionUnrank(rank, n, parts);
    if (!c.ok()) return c.status();
    std::vector<int> u_counts(us, 0);
    for (int k = 0; k < parts; ++k) u_counts[k / vs] += (*c)[k];
    if (!CountsAreTypical(u_counts, n, p_u->probs(), delta)) continue;
    if (!CountsAreTypical(*c, n, p_uv.probs(), delta_prime)) continue;
    // Multinomial probability of the joint type class.
    double log_p = std::lgamma(n + 1.0);
    bool possible = true;
    for (int k = 0; k < parts; ++k) {
      log_p -= std::lgamma((*c)[k] + 1.0);
      if ((*c)[k] == 0) continue;
      if (p_uv[k] <= 0.0) {
        possible = false;
        break;
      }
      log_p += (*c)[k] * std::log(p_uv[k]);
    }
    if (possible) accepted.Add(std::exp(log_p));
  }
  return 1.0 - (1.0 - epsilon_star) * accepted.Total();
}

absl::StatusOr<CounterexampleCurve> ComputeCounterexampleCurve(
    const HypothesisPair& pair, const CounterexampleConfig& config,
    const EnumerationBudget& budget) {
  const JointPmf& p = pair.p_suv();
  absl::StatusOr<double> h_suv = ConditionalEntropy(p, {"S"}, {"U", "V"});
  if (!h_suv.ok()) return h_suv.status();
  absl::StatusOr<double> h_sv = ConditionalEntropy(p, {"S"}, {"V"});
  if (!h_sv.ok()) return h_sv.status();
  if (*h_suv >= *h_sv - 1e-12) {
    return absl::FailedPreconditionError(absl::StrCat(
        "requires H_P(S|U,V) < H_P(S|V); got ", *h_suv, " >= ", *h_sv));
  }
  const double delta_prime = config.delta_prime.value_or(2 * config.delta);
  absl::StatusOr<JointPmf> p_uv = p.Marginal({"U", "V"});
  if (!p_uv.ok()) return p_uv.status();
  absl::StatusOr<Pmf> p_u = p.MarginalPmf("U");
  if (!p_u.ok()) return p_u.status();

  CounterexampleCurve curve;
  curve.h_s_given_uv = *h_suv;
  curve.h_s_given_v = *h_sv;
  const int us = pair.u_size();
  const int vs = pair.v_size();
  for (int n : config.n_list) {
    absl::StatusOr<SchemeModel> model =
        TimeshareQuantizationModel(*p_u, config.delta, config.epsilon_star, n);
    if (!model.ok()) return model.status();
    CounterexamplePoint point;
    point.n = n;

    int64_t v_count = 1;
    for (int i = 0; i < n; ++i) v_count *= vs;
    CompensatedSum alpha;
    for (int64_t u = 0; u < model->num_sequences(); ++u) {
      const std::vector<int> u_seq = SequenceFromIndex(u, n, us);
      for (int64_t v = 0; v < v_count; ++v) {
        const std::vector<int> v_seq = SequenceFromIndex(v, n, vs);
        double p_seq = 1.0;
        for (int i = 0; i < n && p_seq > 0.0; ++i) {
          p_seq *= p_uv->At({u_seq[i], v_seq[i]});
        }
        if (p_seq <= 0.0) continue;
        absl::StatusOr<SequenceSample> v_sample =
            SequenceSample::Create(v_seq, vs);
        if (!v_sample.ok()) return v_sample.status();
        for (const MessageProb& e : model->Row(u)) {
          absl::StatusOr<Hypothesis> decision = QuantizationDetect(
              model->message(e.message), *v_sample, *p_uv, delta_prime);
          if (!decision.ok()) return decision.status();
          if (*decision == Hypothesis::kAlternate) alpha.Add(p_seq * e.prob);
        }
      }
    }
    point.alpha_exact = alpha.Total();

    absl::StatusOr<double> analytic = TimeshareTypeOneError(
        *p_uv, config.delta, delta_prime, config.epsilon_star, n);
    if (!analytic.ok()) return analytic.status();
    point.alpha_analytic = *analytic;

    absl::StatusOr<double> equivocation =
        ExactEquivocation(*model, pair, Hypothesis::kNull, budget);
    if (!equivocation.ok()) return equivocation.status();
    point.equivocation_per_letter = *equivocation / n;
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace htpl
