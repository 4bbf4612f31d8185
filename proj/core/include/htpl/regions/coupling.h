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

#ifndef HTPL_REGIONS_COUPLING_H_
#define HTPL_REGIONS_COUPLING_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"

namespace htpl {

// Requires the marginal of the solution over `axes` to equal `target`, whose
// axes must be exactly `axes` in the same order.
struct MarginalConstraint {
  std::vector<std::string> axes;
  JointPmf target;
};

// Requires H(target | given) >= min_nats for the solution.
struct ConditionalEntropyFloor {
  std::vector<std::string> target;
  std::vector<std::string> given;
  double min_nats = 0.0;
};

// minimize D(p || reference) over joint laws p on the reference's axes that
// satisfy every marginal constraint and the optional entropy floor.
struct CouplingProblem {
  JointPmf reference;
  std::vector<MarginalConstraint> marginals;
  std::optional<ConditionalEntropyFloor> entropy_floor;
};

struct CouplingOptions {
  // Optional start point in the reference's cell order; entries on the
  // support of the reference must be positive.
  std::optional<std::vector<double>> start;
  // Mirror-descent step in (0, 1]. With no entropy floor and step 1 the
  // solver is a single I-projection of the reference.
  double step = 1.0;
  double residual_tolerance = 1e-13;
  double entropy_tolerance = 1e-11;
  int max_projection_sweeps = 100000;
  int max_descent_iterations = 200000;
};

struct CouplingResult {
  // +inf when no feasible law is absolutely continuous with respect to the
  // reference; the coupling is then absent.
  double divergence = 0.0;
  std::optional<JointPmf> coupling;
  double max_residual = 0.0;
  // H(target | given) - min_nats at the returned coupling, 0 without a floor.
  double entropy_slack = 0.0;
  int iterations = 0;
  bool converged = true;
};

// Fails with FailedPrecondition when constraint targets disagree on shared
// axes, and with InvalidArgument on unknown axes or shape mismatches.
absl::StatusOr<CouplingResult> SolveCoupling(
    const CouplingProblem& problem, const CouplingOptions& options = {});

// Whether some law satisfying the marginal constraints is supported inside
// the support of the reference. Exact for up to two constraints (via a
// max-flow test per slice); with more constraints only each constraint is
// tested separately.
absl::StatusOr<bool> SupportFeasible(const CouplingProblem& problem);

}  // namespace htpl

#endif  // HTPL_REGIONS_COUPLING_H_
