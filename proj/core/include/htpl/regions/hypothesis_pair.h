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

#ifndef HTPL_REGIONS_HYPOTHESIS_PAIR_H_
#define HTPL_REGIONS_HYPOTHESIS_PAIR_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"

namespace htpl {

enum class Hypothesis { kNull = 0, kAlternate = 1 };

// Per-letter distortion d(s, s_hat) bounded by d_max.
class Distortion {
 public:
  static absl::StatusOr<Distortion> Create(
      const std::vector<std::vector<double>>& table, double d_max);
  static Distortion Hamming(int size);

  int source_size() const { return source_size_; }
  int estimate_size() const { return estimate_size_; }
  double d_max() const { return d_max_; }
  double operator()(int s, int s_hat) const {
    return table_[static_cast<size_t>(s) * estimate_size_ + s_hat];
  }
  std::vector<std::vector<double>> Table() const;

 private:
  Distortion(int source_size, int estimate_size, std::vector<double> table,
             double d_max)
      : source_size_(source_size),
        estimate_size_(estimate_size),
        table_(std::move(table)),
        d_max_(d_max) {}

  int source_size_;
  int estimate_size_;
  std::vector<double> table_;
  double d_max_;
};

// The null law P and alternate law Q of (S, U, side information). Both laws
// carry the same axes; "S" is the private source, "U" the encoder
// observation, and every remaining axis (in declared order) is side
// information at the detector. Testing against conditional independence
// instances name the side axes "Y" and, optionally, "Z".
class HypothesisPair {
 public:
  static absl::StatusOr<HypothesisPair> Create(
      JointPmf p, JointPmf q,
      std::optional<Distortion> distortion = std::nullopt);

  const JointPmf& p() const { return p_; }
  const JointPmf& q() const { return q_; }
  const JointPmf& law(Hypothesis h) const {
    return h == Hypothesis::kNull ? p_ : q_;
  }
  const std::optional<Distortion>& distortion() const { return distortion_; }
  const std::vector<std::string>& side_axes() const { return side_axes_; }

  // Laws over exactly three axes ("S", "U", "V"), where V merges the side
  // axes row-major (size 1 when there are none).
  const JointPmf& p_suv() const { return p_suv_; }
  const JointPmf& q_suv() const { return q_suv_; }
  const JointPmf& law_suv(Hypothesis h) const {
    return h == Hypothesis::kNull ? p_suv_ : q_suv_;
  }

  int s_size() const { return p_suv_.axes()[0].size; }
  int u_size() const { return p_suv_.axes()[1].size; }
  int v_size() const { return p_suv_.axes()[2].size; }

  // The indicator 1(P_U = Q_U) at kDistributionEqualityTolerance.
  bool u_marginals_equal() const { return u_marginals_equal_; }

 private:
  HypothesisPair(JointPmf p, JointPmf q, std::optional<Distortion> distortion,
                 std::vector<std::string> side_axes, JointPmf p_suv,
                 JointPmf q_suv, bool u_marginals_equal)
      : p_(std::move(p)),
        q_(std::move(q)),
        distortion_(std::move(distortion)),
        side_axes_(std::move(side_axes)),
        p_suv_(std::move(p_suv)),
        q_suv_(std::move(q_suv)),
        u_marginals_equal_(u_marginals_equal) {}

  JointPmf p_;
  JointPmf q_;
  std::optional<Distortion> distortion_;
  std::vector<std::string> side_axes_;
  JointPmf p_suv_;
  JointPmf q_suv_;
  bool u_marginals_equal_;
};

}  // namespace htpl

#endif  // HTPL_REGIONS_HYPOTHESIS_PAIR_H_
