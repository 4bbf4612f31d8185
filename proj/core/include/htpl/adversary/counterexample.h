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

#ifndef HTPL_ADVERSARY_COUNTEREXAMPLE_H_
#define HTPL_ADVERSARY_COUNTEREXAMPLE_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "htpl/adversary/privacy.h"
#include "htpl/regions/hypothesis_pair.h"

namespace htpl {

struct CounterexampleConfig {
  double delta = 0.05;                // encoder typicality slack
  std::optional<double> delta_prime;  // detector slack; 2 delta by default
  double epsilon_star = 0.25;
  std::vector<int> n_list = {2, 4, 6};
};

struct CounterexamplePoint {
  int n = 0;
  double alpha_exact = 0.0;     // enumeration through the scheme's detector
  double alpha_analytic = 0.0;  // joint-type formula
  double equivocation_per_letter = 0.0;  // nats, under the null
};

struct CounterexampleCurve {
  double h_s_given_uv = 0.0;  // nats
  double h_s_given_v = 0.0;
  std::vector<CounterexamplePoint> points;
};

// Exact type I error and per-letter equivocation of the time-shared
// quantization scheme: send the index of a typical u^n, but replace it by the
// error message with probability epsilon_star. Requires
// H_P(S|U,V) < H_P(S|V).
absl::StatusOr<CounterexampleCurve> ComputeCounterexampleCurve(
    const HypothesisPair& pair, const CounterexampleConfig& config,
    const EnumerationBudget& budget = {});

// 1 - (1 - epsilon_star) P(u^n typical, (u^n, v^n) jointly typical), summed
// over joint types.
absl::StatusOr<double> TimeshareTypeOneError(const JointPmf& p_uv, double delta,
                                             double delta_prime,
                                             double epsilon_star, int n);

}  // namespace htpl

#endif  // HTPL_ADVERSARY_COUNTEREXAMPLE_H_
