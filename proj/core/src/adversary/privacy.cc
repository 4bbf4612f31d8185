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

#include "htpl/adversary/privacy.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/numeric.h"
#include "htpl/probcore/parallel.h"
#include "htpl/probcore/rng.h"
#include "htpl/regions/tradeoff.h"
#include "htpl/schemes/timeshare.h"

namespace htpl {
namespace {

struct LetterCell {
  int s = 0;
  int u = 0;
  double p = 0.0;
};

struct KeyedProb {
  uint64_t key = 0;
  double prob = 0.0;
};

// Walks the support of (S^n, U^n) for a fixed v^n under one hypothesis.
class Enumerator {
 public:
  static absl::StatusOr<Enumerator> Create(const SchemeModel& model,
                                           const HypothesisPair& pair,
                                           Hypothesis h,
                                           const EnumerationBudget& budget) {
    if (model.u_size() != pair.u_size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("model input alphabet ", model.u_size(),
                       " != |U| = ", pair.u_size()));
    }
    Enumerator e(model, pair.law_suv(h));
    e.s_size_ = pair.s_size();
    e.v_size_ = pair.v_size();
    double cells = static_cast<double>(model.num_messages());
    e.s_pow_.push_back(1);
    e.v_count_ = 1;
    for (int i = 0; i < e.n_; ++i) {
      e.s_pow_.push_back(e.s_pow_.back() * e.s_size_);
      e.v_count_ *= e.v_size_;
      cells *= static_cast<double>(e.s_size_) * e.v_size_;
      if (cells > static_cast<double>(budget.max_joint_cells)) {
        return absl::ResourceExhaustedError(absl::StrCat(
            "enumeration of |M| |S|^n |V|^n cells exceeds the budget of ",
            budget.max_joint_cells));
      }
    }
    e.cells_by_v_.resize(e.v_size_);
    const JointPmf& law = *e.law_;
    for (int s = 0; s < e.s_size_; ++s) {
      for (int u = 0; u < pair.u_size(); ++u) {
        for (int v = 0; v < e.v_size_; ++v) {
          const double p = law.At({s, u, v});
          if (p > 0.0) e.cells_by_v_[v].push_back(LetterCell{s, u, p});
        }
      }
    }
    return e;
  }

  int n() const { return n_; }
  int s_size() const { return s_size_; }
  uint64_t s_pow(int k) const { return s_pow_[k]; }
  uint64_t v_count() const { return v_count_; }

  // Calls visit(s_index, u_index, P(s^n, u^n, v^n)) over the support.
  template <typename Visit>
  void ForEach(uint64_t v_index, Visit&& visit) const {
    const std::vector<int> v = SequenceFromIndex(v_index, n_, v_size_);
    Walk(v, 0, 0, 0, 1.0, visit);
  }

  // P(m, s^n, v^n) for one v^n, sorted by key m |S|^n + s_index.
  std::vector<KeyedProb> MessageTable(uint64_t v_index) const {
    absl::flat_hash_map<uint64_t, CompensatedSum> table;
    const uint64_t s_total = s_pow_[n_];
    ForEach(v_index, [&](uint64_t s, int64_t u, double p) {
      for (const MessageProb& e : model_->Row(u)) {
        table[static_cast<uint64_t>(e.message) * s_total + s].Add(p * e.prob);
      }
    });
    std::vector<KeyedProb> out;
    out.reserve(table.size());
    for (const auto& [key, sum] : table) out.push_back({key, sum.Total()});
    std::sort(
        out.begin(), out.end(),
        [](const KeyedProb& a, const KeyedProb& b) { return a.key < b.key; });
    return out;
  }

 private:
  Enumerator(const SchemeModel& model, const JointPmf& law)
      : model_(&model), law_(&law), n_(model.n()) {}

  template <typename Visit>
  void Walk(const std::vector<int>& v, int i, uint64_t s_index, int64_t u_index,
            double p, Visit& visit) const {
    if (i == n_) {
      visit(s_index, u_index, p);
      return;
    }
    for (const LetterCell& c : cells_by_v_[v[i]]) {
      Walk(v, i + 1, s_index * s_size_ + c.s, u_index * model_->u_size() + c.u,
           p * c.p, visit);
    }
  }

  const SchemeModel* model_;
  const JointPmf* law_;
  int n_ = 0;
  int s_size_ = 0;
  int v_size_ = 0;
  std::vector<uint64_t> s_pow_;
  uint64_t v_count_ = 0;
  std::vector<std::vector<LetterCell>> cells_by_v_;
};

// sum over messages of H(S^n | m, v^n) P(m, v^n) for one sorted table.
double EquivocationOf(const std::vector<KeyedProb>& table, uint64_t s_total) {
  CompensatedSum total;
  size_t begin = 0;
  while (begin < table.size()) {
    const uint64_t m = table[begin].key / s_total;
    size_t end = begin;
    CompensatedSum mass;
    while (end < table.size() && table[end].key / s_total == m) {
      mass.Add(table[end].prob);
      total.Add(-XLogX(table[end].prob));
      ++end;
    }
    total.Add(XLogX(mass.Total()));
    begin = end;
  }
  return total.Total();
}

// sum_i of the Bayes risk of S_i given (m, v^n, s^{i-1}) for one table.
double CausalDistortionOf(const std::vector<KeyedProb>& table,
                          const Enumerator& e, const Distortion& d) {
  CompensatedSum total;
  std::vector<double> weights(e.s_size());
  for (int i = 0; i < e.n(); ++i) {
    const uint64_t group_div = e.s_pow(e.n() - i);
    const uint64_t letter_div = e.s_pow(e.n() - i - 1);
    size_t begin = 0;
    while (begin < table.size()) {
      const uint64_t group = table[begin].key / group_div;
      std::fill(weights.begin(), weights.end(), 0.0);
      size_t end = begin;
      while (end < table.size() && table[end].key / group_div == group) {
        weights[(table[end].key / letter_div) % e.s_size()] += table[end].prob;
        ++end;
      }
      total.Add(BayesDecisionForWeights(weights, d).expected_distortion);
      begin = end;
    }
  }
  return total.Total();
}

absl::Status CheckDistortion(const HypothesisPair& pair) {
  if (!pair.distortion().has_value()) {
    return absl::FailedPreconditionError("pair carries no distortion table");
  }
  if (pair.distortion()->source_size() != pair.s_size()) {
    return absl::InvalidArgumentError("distortion table does not cover S");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<PrivacyTotals> ExactPrivacyTotals(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    const EnumerationBudget& budget) {
  absl::StatusOr<Enumerator> e = Enumerator::Create(model, pair, h, budget);
  if (!e.ok()) return e.status();
  const bool with_distortion = CheckDistortion(pair).ok();
  std::vector<double> equivocation(e->v_count(), 0.0);
  std::vector<double> distortion(e->v_count(), 0.0);
  ParallelFor(e->v_count(), [&](size_t v) {
    const std::vector<KeyedProb> table = e->MessageTable(v);
    equivocation[v] = EquivocationOf(table, e->s_pow(e->n()));
    if (with_distortion) {
      distortion[v] = CausalDistortionOf(table, *e, *pair.distortion());
    }
  });
  PrivacyTotals totals;
  // Clamp rounding noise below zero; the exact value is nonnegative.
  totals.equivocation = std::max(0.0, CompensatedTotal(equivocation));
  if (with_distortion) totals.causal_distortion = CompensatedTotal(distortion);
  return totals;
}

absl::StatusOr<double> ExactEquivocation(const SchemeModel& model,
                                         const HypothesisPair& pair,
                                         Hypothesis h,
                                         const EnumerationBudget& budget) {
  absl::StatusOr<PrivacyTotals> totals =
      ExactPrivacyTotals(model, pair, h, budget);
  if (!totals.ok()) return totals.status();
  return totals->equivocation;
}

absl::StatusOr<double> ExactCausalDistortion(const SchemeModel& model,
                                             const HypothesisPair& pair,
                                             Hypothesis h,
                                             const EnumerationBudget& budget) {
  if (absl::Status s = CheckDistortion(pair); !s.ok()) return s;
  absl::StatusOr<PrivacyTotals> totals =
      ExactPrivacyTotals(model, pair, h, budget);
  if (!totals.ok()) return totals.status();
  return *totals->causal_distortion;
}

absl::StatusOr<double> ExactConditionalTotalVariation(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    int64_t message, const EnumerationBudget& budget) {
  if (message < 0 || message >= model.num_messages()) {
    return absl::InvalidArgumentError("message id out of range");
  }
  absl::StatusOr<Enumerator> e = Enumerator::Create(model, pair, h, budget);
  if (!e.ok()) return e.status();
  std::vector<double> given(model.num_sequences(), 0.0);
  for (int64_t u = 0; u < model.num_sequences(); ++u) {
    for (const MessageProb& entry : model.Row(u)) {
      if (entry.message == message) given[u] = entry.prob;
    }
  }
  absl::StatusOr<Pmf> p_u = pair.law_suv(h).MarginalPmf("U");
  if (!p_u.ok()) return p_u.status();
  CompensatedSum p_message;
  for (int64_t u = 0; u < model.num_sequences(); ++u) {
    double p = given[u];
    for (int x : SequenceFromIndex(u, model.n(), model.u_size()))
      p *= (*p_u)[x];
    p_message.Add(p);
  }
  if (!(p_message.Total() > 0.0)) {
    return absl::FailedPreconditionError("message has probability zero");
  }
  const double norm = p_message.Total();
  std::vector<double> per_v(e->v_count(), 0.0);
  ParallelFor(e->v_count(), [&](size_t v) {
    absl::flat_hash_map<uint64_t, std::pair<CompensatedSum, CompensatedSum>>
        acc;
    e->ForEach(v, [&](uint64_t s, int64_t u, double p) {
      auto& [joint, conditioned] = acc[s];
      joint.Add(p);
      conditioned.Add(p * given[u]);
    });
    CompensatedSum tv;
    for (const auto& [s, sums] : acc) {
      tv.Add(std::abs(sums.first.Total() - sums.second.Total() / norm));
    }
    per_v[v] = tv.Total();
  });
  return 0.5 * CompensatedTotal(per_v);
}

absl::StatusOr<PrivacyReport> ExactPrivacyReport(
    const SchemeModel& model, const HypothesisPair& pair,
    const EnumerationBudget& budget) {
  PrivacyReport report;
  report.n = model.n();
  report.exact = true;
  for (Hypothesis h : {Hypothesis::kNull, Hypothesis::kAlternate}) {
    absl::StatusOr<PrivacyTotals> totals =
        ExactPrivacyTotals(model, pair, h, budget);
    if (!totals.ok()) return totals.status();
    PrivacyEstimate& out = report.by_hypothesis[static_cast<int>(h)];
    out.equivocation_per_letter = totals->equivocation / model.n();
    if (totals->causal_distortion.has_value()) {
      out.distortion_per_letter = *totals->causal_distortion / model.n();
      out.distortion_stderr = 0.0;
    }
  }
  return report;
}

namespace {

struct Sample {
  int64_t message = 0;
  uint64_t v = 0;
  uint64_t s = 0;
  std::vector<int> s_seq;
  std::vector<int> v_seq;
};

struct MeanAndError {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanAndError Summarize(const std::vector<double>& values) {
  const double count = static_cast<double>(values.size());
  const double mean = CompensatedTotal(values) / count;
  CompensatedSum sq;
  for (double x : values) sq.Add((x - mean) * (x - mean));
  const double var = values.size() > 1 ? sq.Total() / (count - 1) : 0.0;
  return {mean, std::sqrt(var / count)};
}

}  // namespace

absl::StatusOr<PrivacyEstimate> McPrivacyEstimate(
    const SchemeModel& model, const HypothesisPair& pair, Hypothesis h,
    int64_t trials, uint64_t seed, const EnumerationBudget& budget) {
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (model.u_size() != pair.u_size()) {
    return absl::InvalidArgumentError(
        "model input alphabet does not match |U|");
  }
  const int n = model.n();
  const int s_size = pair.s_size();
  const int u_size = pair.u_size();
  const int v_size = pair.v_size();
  const JointPmf& law = pair.law_suv(h);
  std::vector<double> cumulative;
  double running = 0.0;
  for (double p : law.probs()) cumulative.push_back(running += p);
  const bool with_distortion = CheckDistortion(pair).ok();

  std::vector<Sample> samples(trials);
  ParallelFor(trials, [&](size_t t) {
    CounterRng rng(seed, t);
    Sample& sample = samples[t];
    int64_t u_index = 0;
    for (int i = 0; i < n; ++i) {
      const int cell = rng.FromCumulative(cumulative);
      const int s = cell / (u_size * v_size);
      const int u = (cell / v_size) % u_size;
      const int v = cell % v_size;
      sample.s_seq.push_back(s);
      sample.v_seq.push_back(v);
      sample.s = sample.s * s_size + s;
      sample.v = sample.v * v_size + v;
      u_index = u_index * u_size + u;
    }
    absl::Span<const MessageProb> row = model.Row(u_index);
    std::vector<double> weights;
    for (const MessageProb& e : row) weights.push_back(e.prob);
    sample.message = row[rng.Categorical(weights)].message;
  });

  std::vector<double> log_loss(trials, 0.0);
  std::vector<double> distortion(trials, 0.0);
  PrivacyEstimate estimate;
  if (model.num_sequences() <= budget.max_posterior_sequences) {
    std::vector<std::vector<std::pair<int64_t, double>>> inverse(
        model.num_messages());
    for (int64_t u = 0; u < model.num_sequences(); ++u) {
      for (const MessageProb& e : model.Row(u)) {
        inverse[e.message].push_back({u, e.prob});
      }
    }
    absl::StatusOr<JointPmf> uv = law.Marginal({"U", "V"});
    if (!uv.ok()) return uv.status();
    ParallelFor(trials, [&](size_t t) {
      const Sample& sample = samples[t];
      CompensatedSum num, den;
      std::vector<std::vector<double>> weights(n, std::vector<double>(s_size));
      std::vector<double> prefix(n + 1), suffix(n + 1);
      for (const auto& [u_index, p_m] : inverse[sample.message]) {
        const std::vector<int> u = SequenceFromIndex(u_index, n, u_size);
        prefix[0] = p_m;
        for (int i = 0; i < n; ++i) {
          prefix[i + 1] =
              prefix[i] * law.At({sample.s_seq[i], u[i], sample.v_seq[i]});
        }
        suffix[n] = 1.0;
        for (int i = n - 1; i >= 0; --i) {
          suffix[i] = suffix[i + 1] * uv->At({u[i], sample.v_seq[i]});
        }
        num.Add(prefix[n]);
        den.Add(p_m * suffix[0]);
        if (!with_distortion) continue;
        for (int i = 0; i < n; ++i) {
          for (int x = 0; x < s_size; ++x) {
            weights[i][x] +=
                prefix[i] * law.At({x, u[i], sample.v_seq[i]}) * suffix[i + 1];
          }
        }
      }
      log_loss[t] = -std::log(num.Total() / den.Total());
      if (!with_distortion) return;
      for (int i = 0; i < n; ++i) {
        const int guess =
            BayesDecisionForWeights(weights[i], *pair.distortion()).estimate;
        distortion[t] += (*pair.distortion())(sample.s_seq[i], guess);
      }
    });
  } else {
    // Plug-in posteriors from the sample counts themselves.
    estimate.biased = true;
    absl::flat_hash_map<std::tuple<int64_t, uint64_t, uint64_t>, int64_t> joint;
    absl::flat_hash_map<std::pair<int64_t, uint64_t>, int64_t> observed;
    for (const Sample& s : samples) {
      ++joint[{s.message, s.v, s.s}];
      ++observed[{s.message, s.v}];
    }
    for (int64_t t = 0; t < trials; ++t) {
      const Sample& s = samples[t];
      log_loss[t] =
          -std::log(static_cast<double>(joint[{s.message, s.v, s.s}]) /
                    static_cast<double>(observed[{s.message, s.v}]));
    }
    if (with_distortion) {
      for (int i = 0; i < n; ++i) {
        // Counts of S_i per (m, v^n, s^{i-1}).
        absl::flat_hash_map<std::tuple<int64_t, uint64_t, uint64_t>,
                            std::vector<double>>
            counts;
        uint64_t div = 1;
        for (int k = i; k < n; ++k) div *= s_size;
        for (const Sample& s : samples) {
          std::vector<double>& c = counts[{s.message, s.v, s.s / div}];
          c.resize(s_size, 0.0);
          c[s.s_seq[i]] += 1.0;
        }
        for (int64_t t = 0; t < trials; ++t) {
          const Sample& s = samples[t];
          const int guess =
              BayesDecisionForWeights(counts[{s.message, s.v, s.s / div}],
                                      *pair.distortion())
                  .estimate;
          distortion[t] += (*pair.distortion())(s.s_seq[i], guess);
        }
      }
    }
  }
  const MeanAndError eq = Summarize(log_loss);
  estimate.equivocation_per_letter = eq.mean / n;
  estimate.equivocation_stderr = eq.stderr_ / n;
  if (with_distortion) {
    const MeanAndError d = Summarize(distortion);
    estimate.distortion_per_letter = d.mean / n;
    estimate.distortion_stderr = d.stderr_ / n;
  }
  return estimate;
}

}  // namespace htpl
