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

#ifndef HTPL_PROBCORE_RNG_H_
#define HTPL_PROBCORE_RNG_H_

#include <cstdint>
#include <limits>

#include "absl/types/span.h"

namespace htpl {

// Counter-based generator: output k of stream (seed, stream) is a SplitMix64
// finalizer applied to a key derived from both plus k. Streams with distinct
// indices are independent for practical purposes, so parallel workers can
// draw from (seed, trial) without sharing state.
class CounterRng {
 public:
  using result_type = uint64_t;

  explicit CounterRng(uint64_t seed, uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Standard exponential variate.
  double Exponential();
  // Index drawn from nonnegative weights (need not be normalized). Returns
  // the last positive-weight index if rounding leaves the draw unassigned.
  int Categorical(absl::Span<const double> weights);
  // Index drawn from a nondecreasing cumulative table ending at its total.
  int FromCumulative(absl::Span<const double> cumulative);

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

uint64_t MixBits(uint64_t x);

}  // namespace htpl

#endif  // HTPL_PROBCORE_RNG_H_
