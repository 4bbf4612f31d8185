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

#include "htpl/schemes/codebook.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/rng.h"

namespace htpl {

absl::StatusOr<Codebook> BuildCodebook(const Pmf& p_w,
                                       const CodebookParams& params) {
  if (params.n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (!(params.eta > 0.0)) return absl::InvalidArgumentError("eta must be > 0");
  if (!(params.rate >= 0.0)) {
    return absl::InvalidArgumentError("rate must be >= 0");
  }
  if (!(params.mutual_information >= 0.0) || params.u_alphabet_size < 1) {
    return absl::InvalidArgumentError("invalid mutual information or |U|");
  }
  const int n = params.n;
  const double log_size = n * (params.mutual_information + params.eta);
  if (log_size > std::log(static_cast<double>(params.max_codewords))) {
    return absl::ResourceExhaustedError(
        absl::StrCat("codebook of exp(", log_size,
                     ") codewords exceeds the cap of ", params.max_codewords));
  }
  const int64_t size = std::max<int64_t>(
      1, static_cast<int64_t>(std::ceil(std::exp(log_size) - 1e-9)));
  const double correction = static_cast<double>(params.u_alphabet_size) *
                            p_w.size() * std::log(n + 1.0);

  Codebook cb(p_w);
  cb.n_ = n;
  cb.u_alphabet_size_ = params.u_alphabet_size;
  cb.eta_ = params.eta;
  CounterRng rng(params.seed, 0x636f6465626f6f6bULL);
  std::vector<double> cumulative(p_w.size());
  double running = 0.0;
  for (int w = 0; w < p_w.size(); ++w) cumulative[w] = running += p_w[w];
  cb.codewords_.reserve(size);
  for (int64_t j = 0; j < size; ++j) {
    std::vector<int> symbols(n);
    for (int i = 0; i < n; ++i) symbols[i] = rng.FromCumulative(cumulative);
    cb.codewords_.push_back(
        *SequenceSample::Create(std::move(symbols), p_w.size()));
  }
  cb.identity_binning_ =
      !(params.mutual_information + params.eta + correction / n > params.rate);
  cb.bins_.resize(size);
  if (cb.identity_binning_) {
    cb.num_bins_ = size;
    for (int64_t j = 0; j < size; ++j) cb.bins_[j] = j;
  } else {
    const double log_bins = n * params.rate - correction;
    cb.num_bins_ = log_bins <= 0.0 ? 1
                                   : std::min<int64_t>(
                                         size, static_cast<int64_t>(std::ceil(
                                                   std::exp(log_bins) - 1e-9)));
    for (int64_t j = 0; j < size; ++j) {
      cb.bins_[j] =
          static_cast<int64_t>(rng() % static_cast<uint64_t>(cb.num_bins_));
    }
  }
  cb.members_.assign(cb.num_bins_, {});
  for (int64_t j = 0; j < size; ++j) cb.members_[cb.bins_[j]].push_back(j);
  return cb;
}

}  // namespace htpl
