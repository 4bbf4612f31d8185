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

#include "htpl/probcore/typicality.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/information.h"

namespace htpl {
namespace {

absl::Status CheckSameLength(const SequenceSample& x, const SequenceSample& y) {
  if (x.n() != y.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("sequence lengths differ: ", x.n(), " vs ", y.n()));
  }
  if (x.n() < 1) return absl::InvalidArgumentError("empty sequence");
  return absl::OkStatus();
}

constexpr uint64_t kCompositionLimit = std::numeric_limits<int64_t>::max();

}  // namespace

std::vector<int> TypeCounts(const SequenceSample& x) {
  std::vector<int> counts(x.alphabet_size(), 0);
  for (int s : x.symbols()) ++counts[s];
  return counts;
}

bool CountsAreTypical(absl::Span<const int> counts, int n,
                      absl::Span<const double> p, double delta) {
  for (size_t a = 0; a < counts.size(); ++a) {
    const double freq = static_cast<double>(counts[a]) / n;
    // The small slack absorbs rounding in freq when the gap equals delta.
    if (std::abs(p[a] - freq) > delta + 1e-12) return false;
  }
  return true;
}

absl::StatusOr<bool> IsTypical(const SequenceSample& x, const Pmf& p,
                               double delta) {
  if (!(delta >= 0.0)) {
    return absl::InvalidArgumentError("delta must be nonnegative");
  }
  if (x.alphabet_size() != p.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("sequence alphabet ", x.alphabet_size(),
                     " does not match pmf support ", p.size()));
  }
  if (x.n() < 1) return absl::InvalidArgumentError("empty sequence");
  return CountsAreTypical(TypeCounts(x), x.n(), p.probs(), delta);
}

absl::StatusOr<std::vector<int>> JointTypeCounts(const SequenceSample& x,
                                                 const SequenceSample& y) {
  if (absl::Status s = CheckSameLength(x, y); !s.ok()) return s;
  std::vector<int> counts(
      static_cast<size_t>(x.alphabet_size()) * y.alphabet_size(), 0);
  for (int i = 0; i < x.n(); ++i) {
    ++counts[static_cast<size_t>(x[i]) * y.alphabet_size() + y[i]];
  }
  return counts;
}

absl::StatusOr<JointPmf> JointType(const SequenceSample& x,
                                   const SequenceSample& y, std::string x_name,
                                   std::string y_name) {
  absl::StatusOr<std::vector<int>> counts = JointTypeCounts(x, y);
  if (!counts.ok()) return counts.status();
  std::vector<double> weights(counts->begin(), counts->end());
  return JointPmf::FromWeights({Axis{std::move(x_name), x.alphabet_size()},
                                Axis{std::move(y_name), y.alphabet_size()}},
                               std::move(weights));
}

absl::StatusOr<bool> IsJointlyTypical(const SequenceSample& x,
                                      const SequenceSample& y,
                                      const JointPmf& p_xy, double delta) {
  if (p_xy.rank() != 2 || p_xy.axes()[0].size != x.alphabet_size() ||
      p_xy.axes()[1].size != y.alphabet_size()) {
    return absl::InvalidArgumentError(
        "joint law shape does not match the sequence alphabets");
  }
  if (!(delta >= 0.0)) {
    return absl::InvalidArgumentError("delta must be nonnegative");
  }
  absl::StatusOr<std::vector<int>> counts = JointTypeCounts(x, y);
  if (!counts.ok()) return counts.status();
  return CountsAreTypical(*counts, x.n(), p_xy.probs(), delta);
}

absl::StatusOr<double> EmpiricalConditionalEntropy(const SequenceSample& y,
                                                   const SequenceSample& x) {
  absl::StatusOr<JointPmf> type = JointType(x, y, "X", "Y");
  if (!type.ok()) return type.status();
  return ConditionalEntropy(*type, {"Y"}, {"X"});
}

absl::StatusOr<uint64_t> CompositionCount(int n, int parts) {
  if (n < 0 || parts < 0) {
    return absl::InvalidArgumentError("negative composition arguments");
  }
  if (parts == 0) return n == 0 ? 1 : 0;
  // C(n + parts - 1, parts - 1), multiplied incrementally so every partial
  // product is itself a binomial coefficient.
  const int k = parts - 1;
  unsigned __int128 value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<unsigned __int128>(n + i) / i;
    if (value > kCompositionLimit) {
      return absl::ResourceExhaustedError(
          absl::StrCat("number of types with n = ", n, " over ", parts,
                       " letters exceeds 2^63"));
    }
  }
  return static_cast<uint64_t>(value);
}

absl::StatusOr<uint64_t> CompositionRank(absl::Span<const int> counts) {
  int remaining = 0;
  for (int c : counts) {
    if (c < 0) return absl::InvalidArgumentError("negative count");
    remaining += c;
  }
  if (absl::StatusOr<uint64_t> total =
          CompositionCount(remaining, static_cast<int>(counts.size()));
      !total.ok()) {
    return total.status();
  }
  uint64_t rank = 0;
  const int parts = static_cast<int>(counts.size());
  for (int i = 0; i < parts; ++i) {
    for (int c = 0; c < counts[i]; ++c) {
      absl::StatusOr<uint64_t> block =
          CompositionCount(remaining - c, parts - i - 1);
      if (!block.ok()) return block.status();
      rank += *block;
    }
    remaining -= counts[i];
  }
  return rank;
}

absl::StatusOr<std::vector<int>> CompositionUnrank(uint64_t rank, int n,
                                                   int parts) {
  absl::StatusOr<uint64_t> total = CompositionCount(n, parts);
  if (!total.ok()) return total.status();
  if (rank >= *total) {
    return absl::OutOfRangeError(
        absl::StrCat("rank ", rank, " out of range ", *total));
  }
  std::vector<int> counts(parts, 0);
  int remaining = n;
  for (int i = 0; i < parts; ++i) {
    int c = 0;
    while (true) {
      absl::StatusOr<uint64_t> block =
          CompositionCount(remaining - c, parts - i - 1);
      if (!block.ok()) return block.status();
      if (rank < *block) break;
      rank -= *block;
      ++c;
    }
    counts[i] = c;
    remaining -= c;
  }
  return counts;
}

}  // namespace htpl
