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

#ifndef HTPL_PROBCORE_NUMERIC_H_
#define HTPL_PROBCORE_NUMERIC_H_

#include <cmath>
#include <limits>

#include "absl/types/span.h"

namespace htpl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Sup-norm tolerance for the normalization of probability vectors.
inline constexpr double kNormalizationTolerance = 1e-12;

// Sup-norm tolerance used when two distributions are compared for equality.
inline constexpr double kDistributionEqualityTolerance = 1e-12;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void Add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double CompensatedTotal(absl::Span<const double> values);

// x log x with the convention 0 log 0 = 0.
inline double XLogX(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// x log(x / y) with 0 log(0 / y) = 0 and x log(x / 0) = +inf for x > 0.
inline double XLogXOverY(double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return kInfinity;
  return x * std::log(x / y);
}

inline double NatsToBits(double nats) { return nats / std::log(2.0); }
inline double BitsToNats(double bits) { return bits * std::log(2.0); }

}  // namespace htpl

#endif  // HTPL_PROBCORE_NUMERIC_H_
