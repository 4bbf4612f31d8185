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

#ifndef HTPL_PROBCORE_TYPICALITY_H_
#define HTPL_PROBCORE_TYPICALITY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "htpl/probcore/pmf.h"

namespace htpl {

// Letter counts of a sequence.
std::vector<int> TypeCounts(const SequenceSample& x);

// True when |p(a) - N(a|x)/n| <= delta for every letter a.
bool CountsAreTypical(absl::Span<const int> counts, int n,
                      absl::Span<const double> p, double delta);

absl::StatusOr<bool> IsTypical(const SequenceSample& x, const Pmf& p,
                               double delta);

// Pair counts N(a, b | x, y) in row-major order over (X, Y).
absl::StatusOr<std::vector<int>> JointTypeCounts(const SequenceSample& x,
                                                 const SequenceSample& y);

absl::StatusOr<JointPmf> JointType(const SequenceSample& x,
                                   const SequenceSample& y,
                                   std::string x_name = "X",
                                   std::string y_name = "Y");

// Joint typicality of (x, y) with respect to a two-axis law whose first axis
// describes x and second describes y.
absl::StatusOr<bool> IsJointlyTypical(const SequenceSample& x,
                                      const SequenceSample& y,
                                      const JointPmf& p_xy, double delta);

// Conditional entropy H(Y|X) of the joint type of (x, y), in nats.
absl::StatusOr<double> EmpiricalConditionalEntropy(const SequenceSample& y,
                                                   const SequenceSample& x);

// Number of count vectors of length `parts` summing to n; errors when the
// value does not fit in 63 bits.
absl::StatusOr<uint64_t> CompositionCount(int n, int parts);

// Rank of a count vector among all count vectors of the same length and sum,
// in lexicographic order.
absl::StatusOr<uint64_t> CompositionRank(absl::Span<const int> counts);
absl::StatusOr<std::vector<int>> CompositionUnrank(uint64_t rank, int n,
                                                   int parts);

}  // namespace htpl

#endif  // HTPL_PROBCORE_TYPICALITY_H_
