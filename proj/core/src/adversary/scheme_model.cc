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

#include "htpl/adversary/scheme_model.h"

#include <cmath>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/numeric.h"
#include "htpl/probcore/typicality.h"
#include "htpl/schemes/likelihood.h"
#include "htpl/schemes/timeshare.h"

namespace htpl {
namespace {

absl::StatusOr<int64_t> SequenceCount(int alphabet_size, int n) {
  if (alphabet_size < 1 || n < 1) {
    return absl::InvalidArgumentError("alphabet size and n must be positive");
  }
  int64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= alphabet_size;
    if (count > kMaxModelSequences) {
      return absl::ResourceExhaustedError(
          absl::StrCat("model table of ", alphabet_size, "^", n,
                       " sequences exceeds ", kMaxModelSequences));
    }
  }
  return count;
}

// Assigns dense ids to distinct messages in first-seen order.
class MessageTable {
 public:
  int64_t Id(const Message& m) {
    auto [it, inserted] = ids_.try_emplace(
        std::make_tuple(m.is_error, m.type_index, m.bin_or_index),
        static_cast<int64_t>(messages_.size()));
    if (inserted) messages_.push_back(m);
    return it->second;
  }
  std::vector<Message> Release() { return std::move(messages_); }

 private:
  absl::flat_hash_map<std::tuple<bool, uint64_t, int64_t>, int64_t> ids_;
  std::vector<Message> messages_;
};

// Merges repeated message ids within a row.
std::vector<MessageProb> MergeRow(std::vector<MessageProb> row) {
  absl::flat_hash_map<int64_t, size_t> seen;
  std::vector<MessageProb> merged;
  for (const MessageProb& e : row) {
    auto [it, inserted] = seen.try_emplace(e.message, merged.size());
    if (inserted) {
      merged.push_back(e);
    } else {
      merged[it->second].prob += e.prob;
    }
  }
  return merged;
}

}  // namespace

absl::StatusOr<SchemeModel> SchemeModel::Create(
    int n, int u_size, std::vector<Message> messages,
    std::vector<std::vector<MessageProb>> rows) {
  absl::StatusOr<int64_t> count = SequenceCount(u_size, n);
  if (!count.ok()) return count.status();
  if (static_cast<int64_t>(rows.size()) != *count) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", *count, " rows, got ", rows.size()));
  }
  SchemeModel model;
  model.n_ = n;
  model.u_size_ = u_size;
  model.messages_ = std::move(messages);
  model.row_start_.reserve(rows.size() + 1);
  model.row_start_.push_back(0);
  for (size_t u = 0; u < rows.size(); ++u) {
    CompensatedSum total;
    for (const MessageProb& e : rows[u]) {
      if (e.message < 0 || e.message >= model.num_messages()) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", u, " references unknown message ", e.message));
      }
      if (!(e.prob >= 0.0)) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", u, " has a negative probability"));
      }
      total.Add(e.prob);
      if (e.prob > 0.0) model.entries_.push_back(e);
    }
    if (std::abs(total.Total() - 1.0) > 1e-10) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", u, " sums to ", total.Total()));
    }
    model.row_start_.push_back(model.entries_.size());
  }
  return model;
}

std::optional<int64_t> SchemeModel::FindMessage(const Message& m) const {
  for (int64_t id = 0; id < num_messages(); ++id) {
    if (messages_[id] == m) return id;
  }
  return std::nullopt;
}

absl::StatusOr<SchemeModel> ConstantMessageModel(int u_size, int n) {
  absl::StatusOr<int64_t> count = SequenceCount(u_size, n);
  if (!count.ok()) return count.status();
  std::vector<std::vector<MessageProb>> rows(*count, {MessageProb{0, 1.0}});
  return SchemeModel::Create(n, u_size, {Message::Payload(0, 0)},
                             std::move(rows));
}

absl::StatusOr<SchemeModel> FullDisclosureModel(int u_size, int n) {
  absl::StatusOr<int64_t> count = SequenceCount(u_size, n);
  if (!count.ok()) return count.status();
  std::vector<Message> messages;
  std::vector<std::vector<MessageProb>> rows(*count);
  for (int64_t u = 0; u < *count; ++u) {
    messages.push_back(Message::Payload(0, u));
    rows[u] = {MessageProb{u, 1.0}};
  }
  return SchemeModel::Create(n, u_size, std::move(messages), std::move(rows));
}

absl::StatusOr<SchemeModel> PerLetterChannelModel(const Channel& w, int n) {
  absl::StatusOr<int64_t> count = SequenceCount(w.input_size(), n);
  if (!count.ok()) return count.status();
  absl::StatusOr<int64_t> w_count = SequenceCount(w.output_size(), n);
  if (!w_count.ok()) return w_count.status();
  std::vector<Message> messages;
  for (int64_t x = 0; x < *w_count; ++x)
    messages.push_back(Message::Payload(0, x));
  std::vector<std::vector<MessageProb>> rows(*count);
  for (int64_t u = 0; u < *count; ++u) {
    const std::vector<int> us = SequenceFromIndex(u, n, w.input_size());
    for (int64_t x = 0; x < *w_count; ++x) {
      const std::vector<int> ws = SequenceFromIndex(x, n, w.output_size());
      double p = 1.0;
      for (int i = 0; i < n && p > 0.0; ++i) p *= w(us[i], ws[i]);
      if (p > 0.0) rows[u].push_back(MessageProb{x, p});
    }
  }
  return SchemeModel::Create(n, w.input_size(), std::move(messages),
                             std::move(rows));
}

absl::StatusOr<SchemeModel> ZeroRateModel(const Pmf& p_u, double delta, int n) {
  absl::StatusOr<int64_t> count = SequenceCount(p_u.size(), n);
  if (!count.ok()) return count.status();
  std::vector<std::vector<MessageProb>> rows(*count);
  for (int64_t u = 0; u < *count; ++u) {
    absl::StatusOr<SequenceSample> seq =
        SequenceSample::Create(SequenceFromIndex(u, n, p_u.size()), p_u.size());
    if (!seq.ok()) return seq.status();
    absl::StatusOr<bool> typical = IsTypical(*seq, p_u, delta);
    if (!typical.ok()) return typical.status();
    rows[u] = {MessageProb{*typical ? 1 : 0, 1.0}};
  }
  // Message 0 is the error message (bit 0), message 1 the typicality bit.
  return SchemeModel::Create(n, p_u.size(),
                             {Message::Error(), Message::Payload(0, 0)},
                             std::move(rows));
}

absl::StatusOr<SchemeModel> TimeshareQuantizationModel(const Pmf& p_u,
                                                       double delta,
                                                       double epsilon_star,
                                                       int n) {
  if (!(epsilon_star >= 0.0 && epsilon_star <= 1.0)) {
    return absl::InvalidArgumentError("epsilon_star must lie in [0, 1]");
  }
  absl::StatusOr<int64_t> count = SequenceCount(p_u.size(), n);
  if (!count.ok()) return count.status();
  MessageTable table;
  const int64_t error_id = table.Id(Message::Error());
  std::vector<std::vector<MessageProb>> rows(*count);
  for (int64_t u = 0; u < *count; ++u) {
    absl::StatusOr<SequenceSample> seq =
        SequenceSample::Create(SequenceFromIndex(u, n, p_u.size()), p_u.size());
    if (!seq.ok()) return seq.status();
    absl::StatusOr<Message> base = QuantizationEncode(*seq, p_u, delta);
    if (!base.ok()) return base.status();
    if (base->is_error) {
      rows[u] = {MessageProb{error_id, 1.0}};
      continue;
    }
    rows[u] = MergeRow({MessageProb{error_id, epsilon_star},
                        MessageProb{table.Id(*base), 1.0 - epsilon_star}});
  }
  return SchemeModel::Create(n, p_u.size(), table.Release(), std::move(rows));
}

absl::StatusOr<SchemeModel> LikelihoodEncoderModel(const Codebook& cb,
                                                   const Channel& u_given_w,
                                                   double delta_prime) {
  const int n = cb.n();
  const int u_size = u_given_w.output_size();
  absl::StatusOr<int64_t> count = SequenceCount(u_size, n);
  if (!count.ok()) return count.status();
  absl::StatusOr<Pmf> p_u = InducedInputLaw(cb.p_w(), u_given_w);
  if (!p_u.ok()) return p_u.status();
  MessageTable table;
  const int64_t error_id = table.Id(Message::Error());
  std::vector<std::vector<MessageProb>> rows(*count);
  for (int64_t u = 0; u < *count; ++u) {
    absl::StatusOr<SequenceSample> seq =
        SequenceSample::Create(SequenceFromIndex(u, n, u_size), u_size);
    if (!seq.ok()) return seq.status();
    absl::StatusOr<bool> typical = IsTypical(*seq, *p_u, delta_prime);
    if (!typical.ok()) return typical.status();
    if (!*typical) {
      rows[u] = {MessageProb{error_id, 1.0}};
      continue;
    }
    absl::StatusOr<std::vector<double>> probs =
        LikelihoodSelectionProbabilities(cb, *seq, u_given_w);
    if (!probs.ok()) return probs.status();
    std::vector<MessageProb> row;
    for (int64_t j = 0; j < cb.size(); ++j) {
      if ((*probs)[j] <= 0.0) continue;
      absl::StatusOr<uint64_t> t = JointTypeIndex(*seq, cb.codeword(j));
      if (!t.ok()) return t.status();
      row.push_back(
          MessageProb{table.Id(Message::Payload(*t, cb.bin(j))), (*probs)[j]});
    }
    rows[u] = MergeRow(std::move(row));
  }
  return SchemeModel::Create(n, u_size, table.Release(), std::move(rows));
}

}  // namespace htpl
