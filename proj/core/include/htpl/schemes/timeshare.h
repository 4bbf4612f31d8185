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

#ifndef HTPL_SCHEMES_TIMESHARE_H_
#define HTPL_SCHEMES_TIMESHARE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"
#include "htpl/probcore/rng.h"
#include "htpl/regions/hypothesis_pair.h"
#include "htpl/schemes/message.h"

namespace htpl {

// Row-major index of a sequence (first symbol most significant).
uint64_t SequenceIndex(const SequenceSample& x);
std::vector<int> SequenceFromIndex(uint64_t index, int n, int alphabet_size);

// Lossless quantizer: a delta-typical u is sent as its sequence index,
// anything else as the error message.
absl::StatusOr<Message> QuantizationEncode(const SequenceSample& u,
                                           const Pmf& p_u, double delta);

// Replaces a payload by the error message with probability epsilon_star.
absl::StatusOr<Message> TimeshareEncode(const Message& base,
                                        double epsilon_star, CounterRng& rng);

// kNull iff m is a payload and (u(m), v) is jointly delta_prime-typical for
// the two-axis law p_uv.
absl::StatusOr<Hypothesis> QuantizationDetect(const Message& m,
                                              const SequenceSample& v,
                                              const JointPmf& p_uv,
                                              double delta_prime);

}  // namespace htpl

#endif  // HTPL_SCHEMES_TIMESHARE_H_
