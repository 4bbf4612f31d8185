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

#ifndef HTPL_ADVERSARY_PRIVACY_H_
#define HTPL_ADVERSARY_PRIVACY_H_

#include <array>
#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "htpl/adversary/scheme_model.h"
#include "htpl/regions/hypothesis_pair.h"

namespace htpl {

struct EnumerationBudget {
  // Cap on |M| |S|^n |V|^n, the size of the posterior tables.
  int64_t max_joint_cells = 100'000'000;
  // Monte Carlo posteriors are summed exactly over u^n up to this many
  // sequences; beyond it the estimate falls back to plug-in counts.
  int64_t max_posterior_sequences = int64_t{1} << 16;
};

// Unnormalized totals over the block.
struct PrivacyTotals {
  double equivocation = 0.0;                // H(S^n | M, V^n), nats
  std::optional<double> causal_distortion;  // set when the pair has a table
};

// Exact H(S^n|M,V^n) and, when the pair carries a distortion table, the
// minimum over causal estimators phi_i(M, V^n, S^{i-1}) of
// sum_i E d(S_i, phi_i). Both under the law of hypothesis h composed with
// the message law.
absl::StatusOr<PrivacyTotals> ExactPrivacyTotals(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    const EnumerationBudget& budget = {});

absl::StatusOr<double> ExactEquivocation(const SchemeModel& model,
                                         const HypothesisPair& pair,
                                         Hypothesis h,
                                         const EnumerationBudget& budget = {});

absl::StatusOr<double> ExactCausalDistortion(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    const EnumerationBudget& budget = {});

// Total variation between the law of (S^n, V^n) and its law given M = message.
absl::StatusOr<double> ExactConditionalTotalVariation(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    int64_t message, const EnumerationBudget& budget = {});

struct PrivacyEstimate {
  double equivocation_per_letter = 0.0;  // nats
  double equivocation_stderr = 0.0;
  std::optional<double> distortion_per_letter;
  std::optional<double> distortion_stderr;
  // Plug-in estimate from sample counts; biased downward for equivocation.
  bool biased = false;
};

struct PrivacyReport {
  int n = 0;
  bool exact = false;
  std::array<PrivacyEstimate, 2> by_hypothesis;  // indexed by Hypothesis
};

absl::StatusOr<PrivacyReport> ExactPrivacyReport(
    const SchemeModel& model, const HypothesisPair& pair,
    const EnumerationBudget& budget = {});

// Sampled estimate of the per-letter privacy under hypothesis h. Each sample
// scores -log P(s^n|m,v^n) and the causal Bayes loss against exact posteriors
// when |U|^n fits max_posterior_sequences. These are estimates with standard
// errors, not bounds.
absl::StatusOr<PrivacyEstimate> McPrivacyEstimate(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    int64_t trials, uint64_t seed, const EnumerationBudget& budget = {});

}  // namespace htpl

#endif  // HTPL_ADVERSARY_PRIVACY_H_
