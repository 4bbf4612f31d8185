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

#include "htpl/probcore/rng.h"

#include <algorithm>
#include <cmath>

namespace htpl {

uint64_t MixBits(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(uint64_t seed, uint64_t stream)
    : key_(MixBits(seed ^ MixBits(stream + 0x632be59bd9b4e019ULL))) {}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return MixBits(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::Uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::Exponential() { return -std::log1p(-Uniform()); }

int CounterRng::Categorical(absl::Span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = Uniform() * total;
  double running = 0.0;
  int last_positive = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    running += weights[i];
    if (target < running) return static_cast<int>(i);
  }
  return last_positive;
}

int CounterRng::FromCumulative(absl::Span<const double> cumulative) {
  const double target = Uniform() * cumulative.back();
  const auto it =
      std::upper_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) {
    // Rounding at the top: fall back to the last index with positive mass.
    size_t i = cumulative.size() - 1;
    while (i > 0 && cumulative[i] == cumulative[i - 1]) --i;
    return static_cast<int>(i);
  }
  return static_cast<int>(it - cumulative.begin());
}

}  // namespace htpl
