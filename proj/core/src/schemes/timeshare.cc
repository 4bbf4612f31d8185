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

#include "htpl/schemes/timeshare.h"

#include <vector>

#include "absl/status/status.h"
#include "htpl/probcore/typicality.h"

namespace htpl {

uint64_t SequenceIndex(const SequenceSample& x) {
  uint64_t index = 0;
  for (int s : x.symbols()) index = index * x.alphabet_size() + s;
  return index;
}

std::vector<int> SequenceFromIndex(uint64_t index, int n, int alphabet_size) {
  std::vector<int> symbols(n);
  for (int i = n - 1; i >= 0; --i) {
    symbols[i] = static_cast<int>(index % alphabet_size);
    index /= alphabet_size;
  }
  return symbols;
}

absl::StatusOr<Message> QuantizationEncode(const SequenceSample& u,
                                           const Pmf& p_u, double delta) {
  absl::StatusOr<bool> typical = IsTypical(u, p_u, delta);
  if (!typical.ok()) return typical.status();
  if (!*typical) return Message::Error();
  return Message::Payload(0, static_cast<int64_t>(SequenceIndex(u)));
}

absl::StatusOr<Message> TimeshareEncode(const Message& base,
                                        double epsilon_star, CounterRng& rng) {
  if (!(epsilon_star >= 0.0 && epsilon_star <= 1.0)) {
    return absl::InvalidArgumentError("epsilon_star must lie in [0, 1]");
  }
  // Always consume one draw so streams stay aligned across epsilon values
  // and encoder outcomes.
  const double draw = rng.Uniform();
  if (base.is_error) return base;
  return draw < epsilon_star ? Message::Error() : base;
}

absl::StatusOr<Hypothesis> QuantizationDetect(const Message& m,
                                              const SequenceSample& v,
                                              const JointPmf& p_uv,
                                              double delta_prime) {
  if (m.is_error) return Hypothesis::kAlternate;
  if (p_uv.rank() != 2)
    return absl::InvalidArgumentError("p_uv must have two axes");
  const int u_size = p_uv.axes()[0].size;
  absl::StatusOr<SequenceSample> u = SequenceSample::Create(
      SequenceFromIndex(static_cast<uint64_t>(m.bin_or_index), v.n(), u_size),
      u_size);
  if (!u.ok()) return u.status();
  absl::StatusOr<bool> typical = IsJointlyTypical(*u, v, p_uv, delta_prime);
  if (!typical.ok()) return typical.status();
  return *typical ? Hypothesis::kNull : Hypothesis::kAlternate;
}

}  // namespace htpl
