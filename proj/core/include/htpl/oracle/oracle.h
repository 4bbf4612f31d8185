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

#ifndef HTPL_ORACLE_ORACLE_H_
#define HTPL_ORACLE_ORACLE_H_

// Brute-force reference computations for tests. Everything here enumerates
// naively and shares no numerical code with the optimized paths, so
// agreement between the two is evidence rather than tautology.

#include <cstdint>
#include <functional>

#include "absl/status/statusor.h"
#include "htpl/adversary/scheme_model.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/coupling.h"
#include "htpl/regions/hypothesis_pair.h"
#include "htpl/schemes/message.h"

namespace htpl::oracle {

struct OracleBudget {
  int64_t max_joint_cells = 10'000'000;
  int grid_steps = 200;  // grid resolution 1/grid_steps
};

// True when the detector accepts the null on (m, v^n).
using AcceptanceRegion =
    std::function<bool(const Message& m, const SequenceSample& v)>;

struct ErrorProbabilities {
  double alpha = 0.0;  // P(reject | null)
  double beta = 0.0;   // P(accept | alternate)
};

// Sums over every (s^n, u^n, v^n, m).
absl::StatusOr<ErrorProbabilities> ExactErrorProbabilities(
    const SchemeModel& model, const AcceptanceRegion& accept,
    const HypothesisPair& pair, const OracleBudget& budget = {});

// Minimum of D(x || reference) over grid points x (multiples of
// 1/grid_steps on the free coordinates) satisfying the marginal constraints
// and, if present, the entropy floor. At most 8 cells and 3 free coordinates.
// Returns +inf when no grid point is admissible.
absl::StatusOr<double> GridMinKl(const CouplingProblem& problem,
                                 const OracleBudget& budget = {});

// Minimum over causal estimator tables phi_i(m, v^n, s^{i-1}) of
// sum_i E d(S_i, phi_i) under hypothesis h, for n <= 2. The objective is a
// sum of one term per table entry, so each entry is exhausted on its own.
absl::StatusOr<double> ExhaustiveCausalEstimators(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    const OracleBudget& budget = {});

}  // namespace htpl::oracle

#endif  // HTPL_ORACLE_ORACLE_H_
