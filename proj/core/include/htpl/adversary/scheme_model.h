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

#ifndef HTPL_ADVERSARY_SCHEME_MODEL_H_
#define HTPL_ADVERSARY_SCHEME_MODEL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "htpl/probcore/pmf.h"
#include "htpl/schemes/codebook.h"
#include "htpl/schemes/message.h"

namespace htpl {

// Largest |U|^n a model table may cover.
inline constexpr int64_t kMaxModelSequences = int64_t{1} << 24;

struct MessageProb {
  int64_t message = 0;  // dense id into SchemeModel::message()
  double prob = 0.0;
};

// Conditional law of the message given u^n, stored as one sparse row per
// sequence index (first symbol most significant).
class SchemeModel {
 public:
  // Rows must be indexed by u^n and each must sum to 1 within 1e-10.
  static absl::StatusOr<SchemeModel> Create(
      int n, int u_size, std::vector<Message> messages,
      std::vector<std::vector<MessageProb>> rows);

  int n() const { return n_; }
  int u_size() const { return u_size_; }
  int64_t num_sequences() const {
    return static_cast<int64_t>(row_start_.size()) - 1;
  }
  int64_t num_messages() const {
    return static_cast<int64_t>(messages_.size());
  }
  const Message& message(int64_t id) const { return messages_[id]; }
  absl::Span<const MessageProb> Row(int64_t u_index) const {
    return absl::MakeConstSpan(entries_).subspan(
        row_start_[u_index], row_start_[u_index + 1] - row_start_[u_index]);
  }
  std::optional<int64_t> FindMessage(const Message& m) const;

 private:
  SchemeModel() = default;

  int n_ = 0;
  int u_size_ = 0;
  std::vector<Message> messages_;
  std::vector<size_t> row_start_;
  std::vector<MessageProb> entries_;
};

// The same message for every input.
absl::StatusOr<SchemeModel> ConstantMessageModel(int u_size, int n);

// M = u^n itself.
absl::StatusOr<SchemeModel> FullDisclosureModel(int u_size, int n);

// M = w^n drawn letter by letter through `w`; payload is the w^n index.
absl::StatusOr<SchemeModel> PerLetterChannelModel(const Channel& w, int n);

// Payload iff u^n is delta-typical for p_u, error message otherwise.
absl::StatusOr<SchemeModel> ZeroRateModel(const Pmf& p_u, double delta, int n);

// Quantization index of typical u^n kept with probability 1 - epsilon_star.
absl::StatusOr<SchemeModel> TimeshareQuantizationModel(const Pmf& p_u,
                                                       double delta,
                                                       double epsilon_star,
                                                       int n);

// Exact message law of the likelihood encoder for a fixed codebook.
absl::StatusOr<SchemeModel> LikelihoodEncoderModel(const Codebook& cb,
                                                   const Channel& u_given_w,
                                                   double delta_prime);

}  // namespace htpl

#endif  // HTPL_ADVERSARY_SCHEME_MODEL_H_
