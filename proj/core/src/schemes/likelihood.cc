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

#include "htpl/schemes/likelihood.h"

#include <cmath>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/numeric.h"
#include "htpl/probcore/typicality.h"

namespace htpl {

absl::StatusOr<Channel> ReverseChannel(const Pmf& p_u,
                                       const Channel& w_given_u) {
  if (p_u.size() != w_given_u.input_size()) {
    return absl::InvalidArgumentError("channel input does not match P_U");
  }
  const int us = p_u.size();
  const int ws = w_given_u.output_size();
  std::vector<std::vector<double>> rows(ws, std::vector<double>(us, 0.0));
  for (int w = 0; w < ws; ++w) {
    double total = 0.0;
    for (int u = 0; u < us; ++u) total += p_u[u] * w_given_u(u, w);
    for (int u = 0; u < us; ++u) {
      rows[w][u] = total > 0.0 ? p_u[u] * w_given_u(u, w) / total : 1.0 / us;
    }
    double row_total = 0.0;
    for (double x : rows[w]) row_total += x;
    for (double& x : rows[w]) x /= row_total;
  }
  return Channel::Create(rows);
}

absl::StatusOr<Pmf> InducedInputLaw(const Pmf& p_w, const Channel& u_given_w) {
  if (p_w.size() != u_given_w.input_size()) {
    return absl::InvalidArgumentError("channel input does not match P_W");
  }
  std::vector<double> p_u(u_given_w.output_size(), 0.0);
  for (int w = 0; w < p_w.size(); ++w) {
    for (int u = 0; u < u_given_w.output_size(); ++u) {
      p_u[u] += p_w[w] * u_given_w(w, u);
    }
  }
  return Pmf::FromWeights(std::move(p_u));
}

absl::StatusOr<std::vector<double>> LikelihoodSelectionProbabilities(
    const Codebook& cb, const SequenceSample& u, const Channel& u_given_w) {
  if (u.n() != cb.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("input length ", u.n(), " != blocklength ", cb.n()));
  }
  if (u_given_w.input_size() != cb.w_alphabet_size() ||
      u_given_w.output_size() != u.alphabet_size()) {
    return absl::InvalidArgumentError("P_{U|W} shape does not match");
  }
  // Log-domain products with max subtraction before normalization.
  std::vector<double> log_like(cb.size(), -kInfinity);
  double best = -kInfinity;
  for (int64_t j = 0; j < cb.size(); ++j) {
    const SequenceSample& w = cb.codeword(j);
    double acc = 0.0;
    for (int i = 0; i < u.n(); ++i) {
      const double p = u_given_w(w[i], u[i]);
      if (p <= 0.0) {
        acc = -kInfinity;
        break;
      }
      acc += std::log(p);
    }
    log_like[j] = acc;
    best = std::max(best, acc);
  }
  if (std::isinf(best)) {
    return absl::FailedPreconditionError(
        "encoder degenerate: every codeword has zero likelihood");
  }
  std::vector<double> probs(cb.size(), 0.0);
  CompensatedSum total;
  for (int64_t j = 0; j < cb.size(); ++j) {
    if (std::isfinite(log_like[j])) probs[j] = std::exp(log_like[j] - best);
    total.Add(probs[j]);
  }
  for (double& p : probs) p /= total.Total();
  return probs;
}

absl::StatusOr<uint64_t> JointTypeIndex(const SequenceSample& u,
                                        const SequenceSample& w) {
  absl::StatusOr<std::vector<int>> counts = JointTypeCounts(u, w);
  if (!counts.ok()) return counts.status();
  return CompositionRank(*counts);
}

absl::StatusOr<Message> LikelihoodEncode(const Codebook& cb,
                                         const SequenceSample& u,
                                         const Channel& u_given_w,
                                         double delta_prime, CounterRng& rng) {
  absl::StatusOr<Pmf> p_u = InducedInputLaw(cb.p_w(), u_given_w);
  if (!p_u.ok()) return p_u.status();
  absl::StatusOr<bool> typical = IsTypical(u, *p_u, delta_prime);
  if (!typical.ok()) return typical.status();
  if (!*typical) return Message::Error();
  absl::StatusOr<std::vector<double>> probs =
      LikelihoodSelectionProbabilities(cb, u, u_given_w);
  if (!probs.ok()) return probs.status();
  const int64_t j = rng.Categorical(*probs);
  absl::StatusOr<uint64_t> t = JointTypeIndex(u, cb.codeword(j));
  if (!t.ok()) return t.status();
  return Message::Payload(*t, cb.bin(j));
}

absl::StatusOr<std::optional<int64_t>> MinEntropyDecode(const Codebook& cb,
                                                        const Message& m,
                                                        const SequenceSample& v,
                                                        double delta_hat) {
  if (m.is_error) {
    return absl::InvalidArgumentError("cannot decode the error message");
  }
  if (v.n() != cb.n()) {
    return absl::InvalidArgumentError("side information length mismatch");
  }
  if (m.bin_or_index < 0 || m.bin_or_index >= cb.num_bins()) {
    return absl::InvalidArgumentError("bin index out of range");
  }
  if (cb.identity_binning()) return std::optional<int64_t>(m.bin_or_index);
  std::optional<int64_t> best;
  double best_value = kInfinity;
  for (int64_t l : cb.BinMembers(m.bin_or_index)) {
    absl::StatusOr<bool> typical =
        IsTypical(cb.codeword(l), cb.p_w(), delta_hat);
    if (!typical.ok()) return typical.status();
    if (!*typical) continue;
    absl::StatusOr<double> h = EmpiricalConditionalEntropy(cb.codeword(l), v);
    if (!h.ok()) return h.status();
    if (*h < best_value - 1e-12) {
      best_value = *h;
      best = l;
    }
  }
  return best;
}

absl::StatusOr<Hypothesis> Detect(const std::optional<SequenceSample>& w_hat,
                                  const SequenceSample& v, const Message& m,
                                  const DetectorConfig& config) {
  if (m.is_error || !w_hat.has_value()) return Hypothesis::kAlternate;
  if (w_hat->n() != v.n()) {
    return absl::InvalidArgumentError("decoded codeword length mismatch");
  }
  if (config.type_check) {
    const int parts = static_cast<int>(config.p_uw.num_cells());
    absl::StatusOr<std::vector<int>> counts =
        CompositionUnrank(m.type_index, v.n(), parts);
    if (!counts.ok()) return Hypothesis::kAlternate;
    if (!CountsAreTypical(*counts, v.n(), config.p_uw.probs(), config.delta)) {
      return Hypothesis::kAlternate;
    }
  }
  absl::StatusOr<bool> typical =
      IsJointlyTypical(*w_hat, v, config.p_wv, config.delta_tilde);
  if (!typical.ok()) return typical.status();
  return *typical ? Hypothesis::kNull : Hypothesis::kAlternate;
}

}  // namespace htpl
