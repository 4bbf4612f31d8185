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

#ifndef HTPL_SCHEMES_LIKELIHOOD_H_
#define HTPL_SCHEMES_LIKELIHOOD_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "htpl/probcore/pmf.h"
#include "htpl/probcore/rng.h"
#include "htpl/regions/hypothesis_pair.h"
#include "htpl/schemes/codebook.h"
#include "htpl/schemes/message.h"

namespace htpl {

// Typicality slacks derived from the base slack delta.
struct SchemeTolerances {
  double delta = 0.05;
  double encoder() const { return delta / 2; }  // typicality of u
  double decoder(int u_alphabet_size) const {   // typicality of codewords
    return u_alphabet_size * delta;
  }
  double detector() const { return 2 * delta; }  // joint typicality of (w, v)
};

// P_{U|W} by Bayes' rule from P_U and P_{W|U}; rows for letters w with
// P_W(w) = 0 are uniform.
absl::StatusOr<Channel> ReverseChannel(const Pmf& p_u,
                                       const Channel& w_given_u);

// P_U = sum_w P_W(w) P_{U|W}(.|w).
absl::StatusOr<Pmf> InducedInputLaw(const Pmf& p_w, const Channel& u_given_w);

// Probability of selecting each codeword for input u: proportional to
// prod_i P_{U|W}(u_i | w_i(j)). Fails with FailedPrecondition when every
// codeword has zero likelihood.
absl::StatusOr<std::vector<double>> LikelihoodSelectionProbabilities(
    const Codebook& cb, const SequenceSample& u, const Channel& u_given_w);

// Joint-type identifier of (u, w): rank of the |U| x |W| count matrix.
absl::StatusOr<uint64_t> JointTypeIndex(const SequenceSample& u,
                                        const SequenceSample& w);

// Error message when u is not delta_prime-typical for the induced P_U;
// otherwise (t, bin(j)) for a codeword j drawn by likelihood.
absl::StatusOr<Message> LikelihoodEncode(const Codebook& cb,
                                         const SequenceSample& u,
                                         const Channel& u_given_w,
                                         double delta_prime, CounterRng& rng);

// Among the members of the message's bin whose codewords are
// delta_hat-typical for P_W, the index minimizing H_e(w(l) | v), ties to the
// smallest index. Returns the sent index directly under identity binning and
// nullopt when no member qualifies.
absl::StatusOr<std::optional<int64_t>> MinEntropyDecode(const Codebook& cb,
                                                        const Message& m,
                                                        const SequenceSample& v,
                                                        double delta_hat);

struct DetectorConfig {
  // Two-axis laws (U, W) and (W, V).
  JointPmf p_uw;
  JointPmf p_wv;
  // Slack of the type gate on t.
  double delta = 0.05;
  double delta_tilde = 0.1;
  bool type_check = true;
};

// kNull iff the message is a payload, its type passes the gate (when
// enabled), a codeword was decoded, and (w_hat, v) is jointly
// delta_tilde-typical for P_WV.
absl::StatusOr<Hypothesis> Detect(const std::optional<SequenceSample>& w_hat,
                                  const SequenceSample& v, const Message& m,
                                  const DetectorConfig& config);

}  // namespace htpl

#endif  // HTPL_SCHEMES_LIKELIHOOD_H_
