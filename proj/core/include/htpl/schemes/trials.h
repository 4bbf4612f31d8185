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

#ifndef HTPL_SCHEMES_TRIALS_H_
#define HTPL_SCHEMES_TRIALS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "htpl/probcore/pmf.h"
#include "htpl/regions/hypothesis_pair.h"
#include "htpl/schemes/codebook.h"

namespace htpl {

enum class SchemeKind { kLikelihood, kZeroRate, kTimeshare };

absl::StatusOr<SchemeKind> ParseSchemeKind(absl::string_view name);
std::string SchemeKindName(SchemeKind kind);

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::kZeroRate;
  int n = 4;
  double delta = 0.05;
  double eta = 0.05;
  double rate_nats = 0.0;
  double epsilon_star = 0.0;
  int64_t trials = 1000;
  uint64_t seed = 1;
  // Auxiliary channel of the likelihood scheme.
  std::optional<Channel> w_channel;
  // Type gate of the likelihood detector.
  bool type_check = true;
  // Joint typicality slack of the time-sharing detector; 2 delta by default.
  std::optional<double> detector_delta;
  size_t max_codewords = kDefaultMaxCodewords;
};

// {"scheme": "likelihood" | "zero_rate" | "timeshare", "n", "delta", "eta",
//  "rate_nats", "epsilon_star", "trials", "seed"}; omitted fields keep their
// defaults.
absl::StatusOr<SchemeConfig> SchemeConfigFromJson(absl::string_view text);

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

// Wilson score interval for a binomial proportion.
Interval WilsonInterval(int64_t successes, int64_t trials,
                        double z = 1.959963984540054);

struct TrialStats {
  int64_t trials = 0;
  int64_t type1_errors = 0;
  int64_t type2_errors = 0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  Interval alpha_interval;
  Interval beta_interval;
};

// Runs `trials` independent blocks under each hypothesis through the full
// encode, decode and detect pipeline. Trial i under hypothesis h draws from
// the counter stream (seed, 2 i + h), so results do not depend on the worker
// count.
absl::StatusOr<TrialStats> RunTrials(const SchemeConfig& config,
                                     const HypothesisPair& pair);

}  // namespace htpl

#endif  // HTPL_SCHEMES_TRIALS_H_
