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

#ifndef HTPL_TESTS_SUPPORT_TEST_SUPPORT_H_
#define HTPL_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "gtest/gtest.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/hypothesis_pair.h"

// Unwraps a StatusOr inside a test body, failing the test on error.
#define HTPL_CONCAT_INNER(a, b) a##b
#define HTPL_CONCAT(a, b) HTPL_CONCAT_INNER(a, b)
#define ASSERT_OK_AND_ASSIGN(lhs, expr) \
  ASSERT_OK_AND_ASSIGN_IMPL(HTPL_CONCAT(_status_or_, __LINE__), lhs, expr)
#define ASSERT_OK_AND_ASSIGN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  ASSERT_TRUE(tmp.ok()) << tmp.status();          \
  lhs = *std::move(tmp)

#define ASSERT_OK(expr)             \
  do {                              \
    const absl::Status _s = (expr); \
    ASSERT_TRUE(_s.ok()) << _s;     \
  } while (0)

namespace htpl::testing {

// Fixed seed behind every randomized test; each case derives its own stream.
inline constexpr uint64_t kMasterSeed = 0x2026'1019'5eedULL;
inline constexpr int kPropertyCases = 100;

using Gen = std::mt19937_64;

// Generator for case `index` of the property named `name`.
Gen CaseGen(const std::string& name, int index);

// Dirichlet(1) draw; `floor` mixes in that much uniform mass.
std::vector<double> RandomSimplex(Gen& gen, int size, double floor = 0.0);
Pmf RandomPmf(Gen& gen, int size, double floor = 0.0);
Channel RandomChannel(Gen& gen, int input_size, int output_size,
                      double floor = 0.0);
JointPmf RandomJoint(Gen& gen, std::vector<Axis> axes, double floor = 0.0);

// Sparse variant: each cell is zeroed with probability `zero_prob` (at least
// one cell survives).
std::vector<double> RandomSparseSimplex(Gen& gen, int size, double zero_prob);

// Pair over axes S, U, V with independent random laws.
HypothesisPair RandomPair(Gen& gen, int s_size, int u_size, int v_size,
                          double floor = 0.0, bool hamming = true);

// Testing against conditional independence: axes S, U, Y, Z with
// Q_SUYZ = P_{S|U} P_{U|Z} P_{Y|Z} P_Z. `z_size` 1 gives testing against
// independence.
HypothesisPair RandomTaciPair(Gen& gen, int s_size, int u_size, int y_size,
                              int z_size, double floor = 0.0);

std::vector<int> RandomSequence(Gen& gen, int n, int alphabet_size);
double UniformReal(Gen& gen, double lo, double hi);
int UniformInt(Gen& gen, int lo, int hi);  // inclusive bounds

// Path of a file under tests/data.
std::string DataPath(const std::string& name);

}  // namespace htpl::testing

#endif  // HTPL_TESTS_SUPPORT_TEST_SUPPORT_H_
