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

#include "htpl/schemes/trials.h"

#include <cmath>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/parallel.h"
#include "htpl/probcore/rng.h"
#include "htpl/schemes/likelihood.h"
#include "htpl/schemes/timeshare.h"
#include "htpl/schemes/zero_rate.h"
#include "json_internal.h"

namespace htpl {
namespace {

struct Context {
  SchemeConfig config;
  int s_size = 0, u_size = 0, v_size = 0;
  std::vector<double> cumulative[2];  // over (s, u, v) cells per hypothesis
  Pmf p_u = Pmf::Uniform(1);
  Pmf p_v = Pmf::Uniform(1);
  std::optional<JointPmf> p_uv;
  std::optional<Codebook> codebook;
  std::optional<Channel> u_given_w;
  std::optional<DetectorConfig> detector;
  SchemeTolerances tolerances;
};

absl::StatusOr<Context> Prepare(const SchemeConfig& config,
                                const HypothesisPair& pair) {
  if (config.trials < 1)
    return absl::InvalidArgumentError("trials must be >= 1");
  if (config.n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (!(config.delta >= 0.0))
    return absl::InvalidArgumentError("delta must be >= 0");
  if (!(config.epsilon_star >= 0.0 && config.epsilon_star <= 1.0)) {
    return absl::InvalidArgumentError("epsilon_star must lie in [0, 1]");
  }
  Context ctx;
  ctx.config = config;
  ctx.tolerances.delta = config.delta;
  ctx.s_size = pair.s_size();
  ctx.u_size = pair.u_size();
  ctx.v_size = pair.v_size();
  for (int h = 0; h < 2; ++h) {
    const JointPmf& law =
        pair.law_suv(h == 0 ? Hypothesis::kNull : Hypothesis::kAlternate);
    double running = 0.0;
    for (double p : law.probs()) ctx.cumulative[h].push_back(running += p);
  }
  ctx.p_u = *pair.p_suv().MarginalPmf("U");
  ctx.p_v = *pair.p_suv().MarginalPmf("V");
  ctx.p_uv = *pair.p_suv().Marginal({"U", "V"});
  if (config.scheme == SchemeKind::kLikelihood) {
    if (!config.w_channel.has_value()) {
      return absl::InvalidArgumentError(
          "likelihood scheme needs an auxiliary channel");
    }
    const Channel& w = *config.w_channel;
    absl::StatusOr<JointPmf> uvw = ctx.p_uv->WithChannel("U", w, "W");
    if (!uvw.ok()) return uvw.status();
    absl::StatusOr<double> i_uw = MutualInformation(*uvw, {"U"}, {"W"});
    if (!i_uw.ok()) return i_uw.status();
    absl::StatusOr<Pmf> p_w = uvw->MarginalPmf("W");
    if (!p_w.ok()) return p_w.status();
    CodebookParams params;
    params.n = config.n;
    params.eta = config.eta;
    params.rate = config.rate_nats;
    params.mutual_information = *i_uw;
    params.u_alphabet_size = ctx.u_size;
    params.seed = config.seed;
    params.max_codewords = config.max_codewords;
    absl::StatusOr<Codebook> cb = BuildCodebook(*p_w, params);
    if (!cb.ok()) return cb.status();
    ctx.codebook = *std::move(cb);
    absl::StatusOr<Channel> reverse = ReverseChannel(ctx.p_u, w);
    if (!reverse.ok()) return reverse.status();
    ctx.u_given_w = *std::move(reverse);
    DetectorConfig detector{*uvw->Marginal({"U", "W"}),
                            *uvw->Marginal({"W", "V"}), config.delta,
                            ctx.tolerances.detector(), config.type_check};
    ctx.detector = std::move(detector);
  }
  return ctx;
}

// Decision of the configured scheme on one block.
absl::StatusOr<Hypothesis> RunBlock(const Context& ctx, const SequenceSample& u,
                                    const SequenceSample& v, CounterRng& rng) {
  const SchemeConfig& c = ctx.config;
  switch (c.scheme) {
    case SchemeKind::kZeroRate: {
      absl::StatusOr<int> bit = ZeroRateEncode(u, ctx.p_u, c.delta);
      if (!bit.ok()) return bit.status();
      return ZeroRateDetect(*bit, v, ctx.p_v, c.delta);
    }
    case SchemeKind::kTimeshare: {
      absl::StatusOr<Message> base = QuantizationEncode(u, ctx.p_u, c.delta);
      if (!base.ok()) return base.status();
      absl::StatusOr<Message> m = TimeshareEncode(*base, c.epsilon_star, rng);
      if (!m.ok()) return m.status();
      return QuantizationDetect(*m, v, *ctx.p_uv,
                                c.detector_delta.value_or(2 * c.delta));
    }
    case SchemeKind::kLikelihood: {
      absl::StatusOr<Message> m = LikelihoodEncode(
          *ctx.codebook, u, *ctx.u_given_w, ctx.tolerances.encoder(), rng);
      if (!m.ok()) return m.status();
      if (m->is_error) return Hypothesis::kAlternate;
      absl::StatusOr<std::optional<int64_t>> index = MinEntropyDecode(
          *ctx.codebook, *m, v, ctx.tolerances.decoder(ctx.u_size));
      if (!index.ok()) return index.status();
      std::optional<SequenceSample> w_hat;
      if (index->has_value()) w_hat = ctx.codebook->codeword(**index);
      return Detect(w_hat, v, *m, *ctx.detector);
    }
  }
  return absl::InternalError("unknown scheme");
}

}  // namespace

absl::StatusOr<SchemeKind> ParseSchemeKind(absl::string_view name) {
  if (name == "likelihood") return SchemeKind::kLikelihood;
  if (name == "zero_rate") return SchemeKind::kZeroRate;
  if (name == "timeshare") return SchemeKind::kTimeshare;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown scheme '", name, "'"));
}

std::string SchemeKindName(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kLikelihood:
      return "likelihood";
    case SchemeKind::kZeroRate:
      return "zero_rate";
    case SchemeKind::kTimeshare:
      return "timeshare";
  }
  return "unknown";
}

absl::StatusOr<SchemeConfig> SchemeConfigFromJson(absl::string_view text) {
  absl::StatusOr<nlohmann::json> root = internal::ParseJson(text);
  if (!root.ok()) return root.status();
  if (!root->is_object()) {
    return absl::InvalidArgumentError("scheme config: expected an object");
  }
  SchemeConfig config;
  try {
    if (root->contains("scheme")) {
      absl::StatusOr<SchemeKind> kind =
          ParseSchemeKind((*root)["scheme"].get<std::string>());
      if (!kind.ok()) return kind.status();
      config.scheme = *kind;
    }
    if (root->contains("n")) config.n = (*root)["n"].get<int>();
    if (root->contains("delta")) config.delta = (*root)["delta"].get<double>();
    if (root->contains("eta")) config.eta = (*root)["eta"].get<double>();
    if (root->contains("rate_nats")) {
      config.rate_nats = (*root)["rate_nats"].get<double>();
    }
    if (root->contains("epsilon_star")) {
      config.epsilon_star = (*root)["epsilon_star"].get<double>();
    }
    if (root->contains("trials"))
      config.trials = (*root)["trials"].get<int64_t>();
    if (root->contains("seed")) config.seed = (*root)["seed"].get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("scheme config: ", e.what()));
  }
  return config;
}

Interval WilsonInterval(int64_t successes, int64_t trials, double z) {
  if (trials <= 0) return Interval{0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = successes / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half =
      z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return Interval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

absl::StatusOr<TrialStats> RunTrials(const SchemeConfig& config,
                                     const HypothesisPair& pair) {
  absl::StatusOr<Context> ctx = Prepare(config, pair);
  if (!ctx.ok()) return ctx.status();
  const size_t jobs = static_cast<size_t>(config.trials) * 2;
  std::vector<signed char> errors(jobs, 0);
  std::mutex mu;
  absl::Status first_error;
  const int uv = ctx->u_size * ctx->v_size;
  ParallelFor(jobs, [&](size_t job) {
    const int h = static_cast<int>(job % 2);
    CounterRng rng(config.seed, job);
    std::vector<int> u(config.n);
    std::vector<int> v(config.n);
    for (int i = 0; i < config.n; ++i) {
      const int cell = rng.FromCumulative(ctx->cumulative[h]);
      u[i] = (cell % uv) / ctx->v_size;
      v[i] = cell % ctx->v_size;
    }
    absl::StatusOr<Hypothesis> decision =
        RunBlock(*ctx, *SequenceSample::Create(std::move(u), ctx->u_size),
                 *SequenceSample::Create(std::move(v), ctx->v_size), rng);
    if (!decision.ok()) {
      std::lock_guard<std::mutex> lock(mu);
      if (first_error.ok()) first_error = decision.status();
      return;
    }
    const bool wrong = (h == 0) == (*decision == Hypothesis::kAlternate);
    errors[job] = wrong ? 1 : 0;
  });
  if (!first_error.ok()) return first_error;
  TrialStats stats;
  stats.trials = config.trials;
  for (size_t job = 0; job < jobs; ++job) {
    if (errors[job] == 0) continue;
    if (job % 2 == 0) {
      ++stats.type1_errors;
    } else {
      ++stats.type2_errors;
    }
  }
  stats.alpha_hat = static_cast<double>(stats.type1_errors) / stats.trials;
  stats.beta_hat = static_cast<double>(stats.type2_errors) / stats.trials;
  stats.alpha_interval = WilsonInterval(stats.type1_errors, stats.trials);
  stats.beta_interval = WilsonInterval(stats.type2_errors, stats.trials);
  return stats;
}

}  // namespace htpl
