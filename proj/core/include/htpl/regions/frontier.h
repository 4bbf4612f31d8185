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

#ifndef HTPL_REGIONS_FRONTIER_H_
#define HTPL_REGIONS_FRONTIER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/hypothesis_pair.h"
#include "htpl/regions/tradeoff.h"

namespace htpl {

struct FrontierConfig {
  // Auxiliary alphabet sizes searched; the upper end is clamped to |U| + 2.
  int min_w_size = 1;
  std::optional<int> max_w_size;
  int random_channels_per_size = 200;
  // Also seed with every deterministic map U -> W (skipped when there are
  // more than max_deterministic_maps of them).
  bool include_deterministic = true;
  int max_deterministic_maps = 4096;
  // Coordinate search moves probability mass between two outputs of one row.
  double initial_step = 0.01;
  double step_shrink = 0.5;
  double min_step = 1e-4;
  int max_sweeps_per_step = 2000;
  uint64_t seed = 1;
};

struct FrontierPoint {
  // rate = I(W;U|Z), exponent = I(W;Y|Z), privacy0 = H_P(S|W,Y,Z) and
  // privacy1 = H_Q(S|U,Y,Z).
  TradeoffPoint point;
  Channel channel;
  int channel_id = 0;
};

// Pareto-nondominated points (smaller rate, larger exponent, larger privacy0)
// over locally improved auxiliary channels. The pair must be a testing
// against conditional independence instance with side axes Y and optional Z.
absl::StatusOr<std::vector<FrontierPoint>> TaciFrontier(
    const HypothesisPair& pair, const FrontierConfig& config);

// True when a is at least as good as b in every coordinate and strictly
// better in one, comparing with tolerance `tol`.
bool Dominates(const TradeoffPoint& a, const TradeoffPoint& b,
               double tol = 1e-12);

// Removes dominated points and duplicates; output is sorted by rate.
std::vector<FrontierPoint> ParetoFilter(std::vector<FrontierPoint> points,
                                        double tol = 1e-12);

struct EnvelopeValue {
  double exponent = 0.0;
  double privacy0 = 0.0;
};

// Upper concave envelope of (rate, exponent) over the points, evaluated at
// `rate`; privacy0 is interpolated with the same weights. Empty when `rate`
// lies outside the sampled rate range.
std::optional<EnvelopeValue> FrontierEnvelopeAt(
    const std::vector<FrontierPoint>& points, double rate);

}  // namespace htpl

#endif  // HTPL_REGIONS_FRONTIER_H_
