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

#ifndef HTPL_SCHEMES_CODEBOOK_H_
#define HTPL_SCHEMES_CODEBOOK_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"

namespace htpl {

inline constexpr size_t kDefaultMaxCodewords = size_t{1} << 24;

struct CodebookParams {
  int n = 1;
  double eta = 0.05;                // codebook rate margin, nats
  double rate = 0.0;                // message rate R, nats
  double mutual_information = 0.0;  // I_P(U;W), nats
  int u_alphabet_size = 1;
  uint64_t seed = 1;
  size_t max_codewords = kDefaultMaxCodewords;
};

// ceil(exp(n (I + eta))) codewords drawn i.i.d. from P_W. Codeword indices are
// binned uniformly at random into ceil(exp(n R - |U||W| log(n + 1))) bins when
// I + eta + |U||W| log(n + 1) / n > R, and left unbinned otherwise.
class Codebook {
 public:
  int n() const { return n_; }
  const Pmf& p_w() const { return p_w_; }
  int w_alphabet_size() const { return p_w_.size(); }
  int u_alphabet_size() const { return u_alphabet_size_; }
  double eta() const { return eta_; }
  int64_t size() const { return static_cast<int64_t>(codewords_.size()); }
  const SequenceSample& codeword(int64_t j) const { return codewords_[j]; }
  int64_t bin(int64_t j) const { return bins_[j]; }
  int64_t num_bins() const { return num_bins_; }
  bool identity_binning() const { return identity_binning_; }
  const std::vector<int64_t>& BinMembers(int64_t bin) const {
    return members_[bin];
  }

 private:
  friend absl::StatusOr<Codebook> BuildCodebook(const Pmf& p_w,
                                                const CodebookParams& params);
  Codebook(Pmf p_w) : p_w_(std::move(p_w)) {}

  int n_ = 0;
  Pmf p_w_;
  int u_alphabet_size_ = 0;
  double eta_ = 0.0;
  std::vector<SequenceSample> codewords_;
  std::vector<int64_t> bins_;
  int64_t num_bins_ = 0;
  bool identity_binning_ = true;
  std::vector<std::vector<int64_t>> members_;
};

// Fails with ResourceExhausted when the codebook would exceed
// params.max_codewords.
absl::StatusOr<Codebook> BuildCodebook(const Pmf& p_w,
                                       const CodebookParams& params);

}  // namespace htpl

#endif  // HTPL_SCHEMES_CODEBOOK_H_
