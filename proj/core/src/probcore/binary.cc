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

#include "htpl/probcore/binary.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace htpl {
namespace {

bool InUnitInterval(double t) { return t >= 0.0 && t <= 1.0; }

double H2(double t) {
  double h = 0.0;
  if (t > 0.0) h -= t * std::log2(t);
  if (t < 1.0) h -= (1.0 - t) * std::log2(1.0 - t);
  return h;
}

}  // namespace

absl::StatusOr<double> BinaryEntropy(double t) {
  if (!InUnitInterval(t)) {
    return absl::OutOfRangeError(
        absl::StrCat("binary entropy argument ", t, " outside [0, 1]"));
  }
  return H2(t);
}

absl::StatusOr<double> InverseBinaryEntropy(double y) {
  if (!InUnitInterval(y)) {
    return absl::OutOfRangeError(
        absl::StrCat("inverse binary entropy argument ", y, " outside [0, 1]"));
  }
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (H2(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

absl::StatusOr<double> Star(double a, double b) {
  if (!InUnitInterval(a) || !InUnitInterval(b)) {
    return absl::OutOfRangeError(
        absl::StrCat("star arguments (", a, ", ", b, ") outside [0, 1]"));
  }
  return (1.0 - a) * b + (1.0 - b) * a;
}

}  // namespace htpl
