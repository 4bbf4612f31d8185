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

#include "htpl/probcore/pmf.h"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "htpl/probcore/numeric.h"

namespace htpl {
namespace {

absl::Status ValidateProbs(absl::Span<const double> probs,
                           absl::string_view what) {
  if (probs.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(what, ": empty"));
  }
  for (size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0 + kNormalizationTolerance) {
      return absl::InvalidArgumentError(
          absl::StrCat(what, ": entry ", i, " = ", p, " outside [0, 1]"));
    }
  }
  const double total = CompensatedTotal(probs);
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    return absl::InvalidArgumentError(absl::StrCat(what, ": total mass ", total,
                                                   " differs from 1 by ",
                                                   std::abs(total - 1.0)));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> NormalizeWeights(
    std::vector<double> weights) {
  if (weights.empty()) return absl::InvalidArgumentError("empty weights");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("weight ", w, " is negative or not finite"));
    }
  }
  const double total = CompensatedTotal(weights);
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError("weights have zero total");
  }
  for (double& w : weights) w /= total;
  return weights;
}

absl::Status ValidateAxes(const std::vector<Axis>& axes) {
  if (axes.empty()) return absl::InvalidArgumentError("no axes");
  for (size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].size < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("axis '", axes[i].name, "' has size ", axes[i].size));
    }
    if (axes[i].name.empty()) {
      return absl::InvalidArgumentError("axis with empty name");
    }
    for (size_t j = 0; j < i; ++j) {
      if (axes[j].name == axes[i].name) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate axis '", axes[i].name, "'"));
      }
    }
  }
  return absl::OkStatus();
}

size_t CellCount(const std::vector<Axis>& axes) {
  size_t cells = 1;
  for (const Axis& a : axes) cells *= static_cast<size_t>(a.size);
  return cells;
}

}  // namespace

absl::StatusOr<Pmf> Pmf::Create(std::vector<double> probs) {
  if (absl::Status s = ValidateProbs(probs, "pmf"); !s.ok()) return s;
  return Pmf(std::move(probs));
}

absl::StatusOr<Pmf> Pmf::FromWeights(std::vector<double> weights) {
  absl::StatusOr<std::vector<double>> probs =
      NormalizeWeights(std::move(weights));
  if (!probs.ok()) return probs.status();
  return Pmf(*std::move(probs));
}

Pmf Pmf::Uniform(int size) {
  return Pmf(std::vector<double>(size, 1.0 / size));
}

Pmf Pmf::PointMass(int size, int index) {
  std::vector<double> probs(size, 0.0);
  probs[index] = 1.0;
  return Pmf(std::move(probs));
}

JointPmf::JointPmf(std::vector<Axis> axes, std::vector<double> probs)
    : axes_(std::move(axes)), probs_(std::move(probs)) {
  strides_.assign(axes_.size(), 1);
  for (int i = static_cast<int>(axes_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * static_cast<size_t>(axes_[i + 1].size);
  }
}

absl::StatusOr<JointPmf> JointPmf::Create(std::vector<Axis> axes,
                                          std::vector<double> probs) {
  if (absl::Status s = ValidateAxes(axes); !s.ok()) return s;
  if (probs.size() != CellCount(axes)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", CellCount(axes), " cells, got ", probs.size()));
  }
  if (absl::Status s = ValidateProbs(probs, "joint pmf"); !s.ok()) return s;
  return JointPmf(std::move(axes), std::move(probs));
}

absl::StatusOr<JointPmf> JointPmf::FromWeights(std::vector<Axis> axes,
                                               std::vector<double> weights) {
  if (absl::Status s = ValidateAxes(axes); !s.ok()) return s;
  if (weights.size() != CellCount(axes)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", CellCount(axes), " cells, got ", weights.size()));
  }
  absl::StatusOr<std::vector<double>> probs =
      NormalizeWeights(std::move(weights));
  if (!probs.ok()) return probs.status();
  return JointPmf(std::move(axes), *std::move(probs));
}

JointPmf JointPmf::FromPmf(std::string name, const Pmf& pmf) {
  return JointPmf({Axis{std::move(name), pmf.size()}},
                  std::vector<double>(pmf.probs().begin(), pmf.probs().end()));
}

absl::StatusOr<JointPmf> JointPmf::Product(const JointPmf& a,
                                           const JointPmf& b) {
  std::vector<Axis> axes = a.axes_;
  axes.insert(axes.end(), b.axes_.begin(), b.axes_.end());
  if (absl::Status s = ValidateAxes(axes); !s.ok()) return s;
  std::vector<double> probs;
  probs.reserve(a.num_cells() * b.num_cells());
  for (double pa : a.probs_) {
    for (double pb : b.probs_) probs.push_back(pa * pb);
  }
  return JointPmf(std::move(axes), std::move(probs));
}

std::optional<int> JointPmf::FindAxis(absl::string_view name) const {
  for (size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

absl::StatusOr<int> JointPmf::AxisSize(absl::string_view name) const {
  std::optional<int> axis = FindAxis(name);
  if (!axis.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown axis '", name, "'"));
  }
  return axes_[*axis].size;
}

std::vector<std::string> JointPmf::AxisNames() const {
  std::vector<std::string> names;
  for (const Axis& a : axes_) names.push_back(a.name);
  return names;
}

size_t JointPmf::FlatIndex(absl::Span<const int> index) const {
  size_t cell = 0;
  for (size_t i = 0; i < axes_.size(); ++i) {
    cell += strides_[i] * static_cast<size_t>(index[i]);
  }
  return cell;
}

std::vector<int> JointPmf::MultiIndex(size_t cell) const {
  std::vector<int> index(axes_.size());
  for (size_t i = 0; i < axes_.size(); ++i) {
    index[i] = static_cast<int>(cell / strides_[i]);
    cell %= strides_[i];
  }
  return index;
}

absl::StatusOr<std::vector<size_t>> JointPmf::ProjectionIndex(
    const std::vector<std::string>& names) const {
  std::vector<int> positions;
  for (const std::string& name : names) {
    std::optional<int> axis = FindAxis(name);
    if (!axis.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown axis '", name, "' (have ",
                       absl::StrJoin(AxisNames(), ","), ")"));
    }
    for (int p : positions) {
      if (p == *axis) {
        return absl::InvalidArgumentError(
            absl::StrCat("axis '", name, "' listed twice"));
      }
    }
    positions.push_back(*axis);
  }
  std::vector<size_t> out_strides(positions.size(), 1);
  for (int i = static_cast<int>(positions.size()) - 2; i >= 0; --i) {
    out_strides[i] =
        out_strides[i + 1] * static_cast<size_t>(axes_[positions[i + 1]].size);
  }
  std::vector<size_t> projection(probs_.size());
  for (size_t cell = 0; cell < probs_.size(); ++cell) {
    size_t target = 0;
    for (size_t k = 0; k < positions.size(); ++k) {
      const size_t coord =
          (cell / strides_[positions[k]]) % axes_[positions[k]].size;
      target += coord * out_strides[k];
    }
    projection[cell] = target;
  }
  return projection;
}

absl::StatusOr<JointPmf> JointPmf::Marginal(
    const std::vector<std::string>& names) const {
  if (names.empty()) return JointPmf({Axis{"_", 1}}, {1.0});
  absl::StatusOr<std::vector<size_t>> projection = ProjectionIndex(names);
  if (!projection.ok()) return projection.status();
  std::vector<Axis> axes;
  for (const std::string& name : names) axes.push_back(axes_[*FindAxis(name)]);
  std::vector<double> probs(CellCount(axes), 0.0);
  for (size_t cell = 0; cell < probs_.size(); ++cell) {
    probs[(*projection)[cell]] += probs_[cell];
  }
  return JointPmf(std::move(axes), std::move(probs));
}

absl::StatusOr<Pmf> JointPmf::MarginalPmf(absl::string_view name) const {
  absl::StatusOr<JointPmf> marginal = Marginal({std::string(name)});
  if (!marginal.ok()) return marginal.status();
  return Pmf(std::move(marginal->probs_));
}

absl::StatusOr<JointPmf> JointPmf::Grouped(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& groups)
    const {
  std::vector<std::string> members;
  std::vector<Axis> axes;
  for (const auto& [name, group] : groups) {
    int size = 1;
    for (const std::string& member : group) {
      absl::StatusOr<int> s = AxisSize(member);
      if (!s.ok()) return s.status();
      size *= *s;
      members.push_back(member);
    }
    axes.push_back(Axis{name, size});
  }
  if (absl::Status s = ValidateAxes(axes); !s.ok()) return s;
  std::vector<double> probs(CellCount(axes), 0.0);
  if (members.empty()) {
    probs[0] = 1.0;
    return JointPmf(std::move(axes), std::move(probs));
  }
  // Row-major over the concatenated members equals row-major over the groups.
  absl::StatusOr<std::vector<size_t>> projection = ProjectionIndex(members);
  if (!projection.ok()) return projection.status();
  for (size_t cell = 0; cell < probs_.size(); ++cell) {
    probs[(*projection)[cell]] += probs_[cell];
  }
  return JointPmf(std::move(axes), std::move(probs));
}

absl::StatusOr<JointPmf> JointPmf::WithChannel(absl::string_view input_axis,
                                               const Channel& channel,
                                               std::string output_name) const {
  std::optional<int> axis = FindAxis(input_axis);
  if (!axis.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown axis '", input_axis, "'"));
  }
  if (axes_[*axis].size != channel.input_size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "channel input size ", channel.input_size(), " does not match axis '",
        input_axis, "' of size ", axes_[*axis].size));
  }
  std::vector<Axis> axes = axes_;
  axes.push_back(Axis{std::move(output_name), channel.output_size()});
  if (absl::Status s = ValidateAxes(axes); !s.ok()) return s;
  std::vector<double> probs;
  probs.reserve(probs_.size() * channel.output_size());
  for (size_t cell = 0; cell < probs_.size(); ++cell) {
    const int input =
        static_cast<int>((cell / strides_[*axis]) % axes_[*axis].size);
    for (int out = 0; out < channel.output_size(); ++out) {
      probs.push_back(probs_[cell] * channel(input, out));
    }
  }
  return JointPmf(std::move(axes), std::move(probs));
}

absl::StatusOr<JointPmf> JointPmf::WithProbs(std::vector<double> probs) const {
  return FromWeights(axes_, std::move(probs));
}

absl::StatusOr<Channel> Channel::Create(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return absl::InvalidArgumentError("channel has no rows");
  const size_t outputs = rows[0].size();
  std::vector<double> entries;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != outputs) {
      return absl::InvalidArgumentError(
          absl::StrCat("channel row ", i, " has ", rows[i].size(),
                       " entries, expected ", outputs));
    }
    if (absl::Status s =
            ValidateProbs(rows[i], absl::StrCat("channel row ", i));
        !s.ok()) {
      return s;
    }
    entries.insert(entries.end(), rows[i].begin(), rows[i].end());
  }
  return Channel(static_cast<int>(rows.size()), static_cast<int>(outputs),
                 std::move(entries));
}

Channel Channel::Identity(int size) {
  std::vector<double> entries(static_cast<size_t>(size) * size, 0.0);
  for (int i = 0; i < size; ++i) entries[static_cast<size_t>(i) * size + i] = 1;
  return Channel(size, size, std::move(entries));
}

Channel Channel::Constant(int input_size) {
  return Channel(input_size, 1, std::vector<double>(input_size, 1.0));
}

absl::StatusOr<Channel> Channel::Deterministic(const std::vector<int>& map,
                                               int output_size) {
  if (map.empty() || output_size < 1) {
    return absl::InvalidArgumentError("empty deterministic channel");
  }
  std::vector<double> entries(map.size() * output_size, 0.0);
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i] < 0 || map[i] >= output_size) {
      return absl::InvalidArgumentError(
          absl::StrCat("map[", i, "] = ", map[i], " out of range"));
    }
    entries[i * output_size + map[i]] = 1.0;
  }
  return Channel(static_cast<int>(map.size()), output_size, std::move(entries));
}

std::vector<std::vector<double>> Channel::Rows() const {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < input_size_; ++i) {
    absl::Span<const double> row = Row(i);
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

absl::StatusOr<SequenceSample> SequenceSample::Create(std::vector<int> symbols,
                                                      int alphabet_size) {
  if (alphabet_size < 1) {
    return absl::InvalidArgumentError("alphabet size must be positive");
  }
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] < 0 || symbols[i] >= alphabet_size) {
      return absl::InvalidArgumentError(
          absl::StrCat("symbol ", symbols[i], " at position ", i,
                       " outside alphabet of size ", alphabet_size));
    }
  }
  return SequenceSample(std::move(symbols), alphabet_size);
}

bool ProbsEqual(absl::Span<const double> a, absl::Span<const double> b,
                double tolerance) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tolerance) return false;
  }
  return true;
}

}  // namespace htpl
