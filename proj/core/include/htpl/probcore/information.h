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

#ifndef HTPL_PROBCORE_INFORMATION_H_
#define HTPL_PROBCORE_INFORMATION_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "htpl/probcore/pmf.h"

// All quantities are in nats.
namespace htpl {

double Entropy(const Pmf& p);
double Entropy(absl::Span<const double> probs);

// +inf exactly when p is not absolutely continuous with respect to q.
absl::StatusOr<double> KlDivergence(const Pmf& p, const Pmf& q);
// Requires identical axes.
absl::StatusOr<double> KlDivergence(const JointPmf& p, const JointPmf& q);

// Joint entropy of the listed axes.
absl::StatusOr<double> JointEntropy(const JointPmf& j,
                                    const std::vector<std::string>& axes);
absl::StatusOr<double> ConditionalEntropy(
    const JointPmf& j, const std::vector<std::string>& target,
    const std::vector<std::string>& given);
absl::StatusOr<double> MutualInformation(const JointPmf& j,
                                         const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);
absl::StatusOr<double> ConditionalMutualInformation(
    const JointPmf& j, const std::vector<std::string>& a,
    const std::vector<std::string>& b, const std::vector<std::string>& given);

absl::StatusOr<double> TotalVariation(const Pmf& p, const Pmf& q);
// Requires identical axes.
absl::StatusOr<double> TotalVariation(const JointPmf& p, const JointPmf& q);
double TotalVariation(absl::Span<const double> p, absl::Span<const double> q);

// Upper bound on |H(p) - H(q)| for distributions on `alphabet_size` letters
// at total variation rho <= 1/4.
absl::StatusOr<double> EntropyContinuityBound(double rho, int alphabet_size);

}  // namespace htpl

#endif  // HTPL_PROBCORE_INFORMATION_H_
