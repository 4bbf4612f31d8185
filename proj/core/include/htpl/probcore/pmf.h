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

#ifndef HTPL_PROBCORE_PMF_H_
#define HTPL_PROBCORE_PMF_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"

namespace htpl {

class Channel;

// Probability mass function on {0, ..., size - 1}.
class Pmf {
 public:
  // Fails unless every entry lies in [0, 1] and the total is 1 within
  // kNormalizationTolerance.
  static absl::StatusOr<Pmf> Create(std::vector<double> probs);
  // Normalizes nonnegative finite weights with a positive total.
  static absl::StatusOr<Pmf> FromWeights(std::vector<double> weights);
  static Pmf Uniform(int size);
  static Pmf PointMass(int size, int index);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  absl::Span<const double> probs() const { return probs_; }

 private:
  friend class JointPmf;
  explicit Pmf(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

struct Axis {
  std::string name;
  int size = 0;

  friend bool operator==(const Axis&, const Axis&) = default;
};

// Dense joint distribution over labeled finite axes, stored row-major in the
// declared axis order (the last axis varies fastest).
class JointPmf {
 public:
  static absl::StatusOr<JointPmf> Create(std::vector<Axis> axes,
                                         std::vector<double> probs);
  static absl::StatusOr<JointPmf> FromWeights(std::vector<Axis> axes,
                                              std::vector<double> weights);
  static JointPmf FromPmf(std::string name, const Pmf& pmf);
  static absl::StatusOr<JointPmf> Product(const JointPmf& a, const JointPmf& b);

  const std::vector<Axis>& axes() const { return axes_; }
  int rank() const { return static_cast<int>(axes_.size()); }
  size_t num_cells() const { return probs_.size(); }
  absl::Span<const double> probs() const { return probs_; }
  double operator[](size_t cell) const { return probs_[cell]; }

  std::optional<int> FindAxis(absl::string_view name) const;
  bool HasAxis(absl::string_view name) const {
    return FindAxis(name).has_value();
  }
  absl::StatusOr<int> AxisSize(absl::string_view name) const;
  std::vector<std::string> AxisNames() const;

  size_t FlatIndex(absl::Span<const int> index) const;
  std::vector<int> MultiIndex(size_t cell) const;
  double At(absl::Span<const int> index) const {
    return probs_[FlatIndex(index)];
  }

  // Maps every cell to its row-major index in the marginal over `names`,
  // taken in the order given.
  absl::StatusOr<std::vector<size_t>> ProjectionIndex(
      const std::vector<std::string>& names) const;

  // Marginal over `names` with axes in the order given; an empty list yields
  // a one-cell law on a size-1 axis named "_".
  absl::StatusOr<JointPmf> Marginal(
      const std::vector<std::string>& names) const;
  absl::StatusOr<Pmf> MarginalPmf(absl::string_view name) const;

  // Collapses groups of axes into single axes (row-major within a group).
  // Every axis of this law must belong to at most one group; axes left out are
  // summed over. An empty group becomes a size-1 axis.
  absl::StatusOr<JointPmf> Grouped(
      const std::vector<std::pair<std::string, std::vector<std::string>>>&
          groups) const;

  // Appends an axis `output_name` distributed as `channel` given `input_axis`.
  absl::StatusOr<JointPmf> WithChannel(absl::string_view input_axis,
                                       const Channel& channel,
                                       std::string output_name) const;

  // Same axes, rescaled to unit mass; used for cells built from weights.
  absl::StatusOr<JointPmf> WithProbs(std::vector<double> probs) const;

 private:
  JointPmf(std::vector<Axis> axes, std::vector<double> probs);

  std::vector<Axis> axes_;
  std::vector<size_t> strides_;
  std::vector<double> probs_;
};

// Row-stochastic conditional law of an output given an input.
class Channel {
 public:
  static absl::StatusOr<Channel> Create(
      const std::vector<std::vector<double>>& rows);
  static Channel Identity(int size);
  // Single output letter; carries no information about the input.
  static Channel Constant(int input_size);
  static absl::StatusOr<Channel> Deterministic(const std::vector<int>& map,
                                               int output_size);

  int input_size() const { return input_size_; }
  int output_size() const { return output_size_; }
  double operator()(int input, int output) const {
    return entries_[static_cast<size_t>(input) * output_size_ + output];
  }
  absl::Span<const double> Row(int input) const {
    return absl::MakeConstSpan(entries_).subspan(
        static_cast<size_t>(input) * output_size_, output_size_);
  }
  std::vector<std::vector<double>> Rows() const;

 private:
  Channel(int input_size, int output_size, std::vector<double> entries)
      : input_size_(input_size),
        output_size_(output_size),
        entries_(std::move(entries)) {}

  int input_size_;
  int output_size_;
  std::vector<double> entries_;
};

// A length-n sequence over {0, ..., alphabet_size - 1}.
class SequenceSample {
 public:
  static absl::StatusOr<SequenceSample> Create(std::vector<int> symbols,
                                               int alphabet_size);

  int n() const { return static_cast<int>(symbols_.size()); }
  int alphabet_size() const { return alphabet_size_; }
  int operator[](int i) const { return symbols_[i]; }
  const std::vector<int>& symbols() const { return symbols_; }

  friend bool operator==(const SequenceSample&,
                         const SequenceSample&) = default;

 private:
  SequenceSample(std::vector<int> symbols, int alphabet_size)
      : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {}

  std::vector<int> symbols_;
  int alphabet_size_;
};

// Sup-norm comparison of equally sized probability vectors.
bool ProbsEqual(absl::Span<const double> a, absl::Span<const double> b,
                double tolerance = 1e-12);

}  // namespace htpl

#endif  // HTPL_PROBCORE_PMF_H_
