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

#ifndef HTPL_PROBCORE_BINARY_H_
#define HTPL_PROBCORE_BINARY_H_

#include "absl/status/statusor.h"

// Binary entropy and binary convolution. Entropies here are in bits.
namespace htpl {

// h(t) = -t log2 t - (1 - t) log2 (1 - t) for t in [0, 1].
absl::StatusOr<double> BinaryEntropy(double t);

// Left branch of the inverse of h: the unique t in [0, 1/2] with h(t) = y,
// found by bisection to 1e-12.
absl::StatusOr<double> InverseBinaryEntropy(double y);

// a * b = (1 - a) b + (1 - b) a for a, b in [0, 1].
absl::StatusOr<double> Star(double a, double b);

}  // namespace htpl

#endif  // HTPL_PROBCORE_BINARY_H_
