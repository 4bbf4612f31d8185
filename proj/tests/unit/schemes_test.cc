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

#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/rng.h"
#include "htpl/probcore/typicality.h"
#include "htpl/regions/hypothesis_pair.h"
#include "htpl/schemes/codebook.h"
#include "htpl/schemes/likelihood.h"
#include "htpl/schemes/message.h"
#include "htpl/schemes/timeshare.h"
#include "htpl/schemes/trials.h"
#include "htpl/schemes/zero_rate.h"
#include "test_support.h"

namespace htpl {
namespace {

using testing::CaseGen;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using testing::RandomPair;

SequenceSample Seq(std::vector<int> symbols, int alphabet) {
  return *SequenceSample::Create(std::move(symbols), alphabet);
}

const std::vector<Axis> kSuv222 = {{"S", 2}, {"U", 2}, {"V", 2}};

HypothesisPair BinaryPair() {
  return *HypothesisPair::Create(
      *JointPmf::Create(kSuv222,
                        {0.30, 0.05, 0.10, 0.05, 0.05, 0.10, 0.05, 0.30}),
      *JointPmf::Create(kSuv222, std::vector<double>(8, 0.125)),
      Distortion::Hamming(2));
}

TEST(SequenceIndexTest, FirstSymbolIsMostSignificant) {
  EXPECT_EQ(SequenceIndex(Seq({1, 0}, 2)), 2u);
  EXPECT_EQ(SequenceIndex(Seq({0, 2, 1}, 3)), 7u);
  EXPECT_THAT(SequenceFromIndex(7, 3, 3), ElementsAre(0, 2, 1));
  for (uint64_t i = 0; i < 81; ++i) {
    EXPECT_EQ(SequenceIndex(Seq(SequenceFromIndex(i, 4, 3), 3)), i);
  }
}

TEST(QuantizationTest, TypicalInputsAreSentVerbatim) {
  const Pmf p_u = *Pmf::Create({0.5, 0.5});
  ASSERT_OK_AND_ASSIGN(Message m,
                       QuantizationEncode(Seq({0, 1, 1, 0}, 2), p_u, 0.1));
  EXPECT_FALSE(m.is_error);
  EXPECT_EQ(m.bin_or_index, 6);
  ASSERT_OK_AND_ASSIGN(Message e,
                       QuantizationEncode(Seq({0, 0, 0, 1}, 2), p_u, 0.1));
  EXPECT_TRUE(e.is_error);
}

TEST(QuantizationTest, DetectorChecksJointTypicality) {
  ASSERT_OK_AND_ASSIGN(
      JointPmf p_uv, JointPmf::Create({{"U", 2}, {"V", 2}}, {0.5, 0, 0, 0.5}));
  const Message m = Message::Payload(0, 6);  // u = 0110
  EXPECT_EQ(*QuantizationDetect(m, Seq({0, 1, 1, 0}, 2), p_uv, 0.01),
            Hypothesis::kNull);
  EXPECT_EQ(*QuantizationDetect(m, Seq({1, 1, 1, 0}, 2), p_uv, 0.01),
            Hypothesis::kAlternate);
  EXPECT_EQ(
      *QuantizationDetect(Message::Error(), Seq({0, 1, 1, 0}, 2), p_uv, 1),
      Hypothesis::kAlternate);
}

TEST(TimeshareTest, ExtremesAndSingleDraw) {
  const Message payload = Message::Payload(0, 3);
  CounterRng a(5, 9), b(5, 9);
  ASSERT_OK_AND_ASSIGN(Message kept, TimeshareEncode(payload, 0.0, a));
  EXPECT_EQ(kept, payload);
  b();
  EXPECT_EQ(a(), b());
  CounterRng c(5, 9), d(5, 9);
  ASSERT_OK_AND_ASSIGN(Message dropped, TimeshareEncode(payload, 1.0, c));
  EXPECT_TRUE(dropped.is_error);
  d();
  EXPECT_EQ(c(), d());
  // The error message stays the error message and still consumes a draw.
  CounterRng e(5, 9), f(5, 9);
  ASSERT_OK_AND_ASSIGN(Message err, TimeshareEncode(Message::Error(), 0.0, e));
  EXPECT_TRUE(err.is_error);
  f();
  EXPECT_EQ(e(), f());
  EXPECT_FALSE(TimeshareEncode(payload, 1.5, e).ok());
}

TEST(ZeroRateTest, EncodeAndDetect) {
  const Pmf half = *Pmf::Create({0.5, 0.5});
  EXPECT_EQ(*ZeroRateEncode(Seq({0, 1, 0, 1}, 2), half, 0.1), 1);
  EXPECT_EQ(*ZeroRateEncode(Seq({0, 0, 0, 1}, 2), half, 0.1), 0);
  EXPECT_EQ(*ZeroRateDetect(1, Seq({1, 0, 0, 1}, 2), half, 0.1),
            Hypothesis::kNull);
  EXPECT_EQ(*ZeroRateDetect(0, Seq({1, 0, 0, 1}, 2), half, 0.1),
            Hypothesis::kAlternate);
  EXPECT_EQ(*ZeroRateDetect(1, Seq({1, 1, 1, 1}, 2), half, 0.1),
            Hypothesis::kAlternate);
}

// Brute force over all (u^n, v^n) pairs, independent of the type-class sum.
ZeroRateErrors BruteForceZeroRate(const HypothesisPair& pair, double delta,
                                  int n) {
  const JointPmf p_uv = *pair.p_suv().Marginal({"U", "V"});
  const JointPmf q_uv = *pair.q_suv().Marginal({"U", "V"});
  const int nu = pair.u_size(), nv = pair.v_size();
  std::vector<double> pu(nu, 0.0), pv(nv, 0.0);
  for (int u = 0; u < nu; ++u) {
    for (int v = 0; v < nv; ++v) {
      pu[u] += p_uv.At({u, v});
      pv[v] += p_uv.At({u, v});
    }
  }
  auto typical = [&](const std::vector<int>& x, const std::vector<double>& p) {
    for (size_t a = 0; a < p.size(); ++a) {
      int count = 0;
      for (int s : x) count += s == static_cast<int>(a);
      if (std::abs(p[a] - static_cast<double>(count) / n) > delta) return false;
    }
    return true;
  };
  uint64_t nu_n = 1, nv_n = 1;
  for (int i = 0; i < n; ++i) {
    nu_n *= nu;
    nv_n *= nv;
  }
  ZeroRateErrors out;
  double accept_p = 0.0;
  for (uint64_t iu = 0; iu < nu_n; ++iu) {
    const std::vector<int> u = SequenceFromIndex(iu, n, nu);
    if (!typical(u, pu)) continue;
    for (uint64_t iv = 0; iv < nv_n; ++iv) {
      const std::vector<int> v = SequenceFromIndex(iv, n, nv);
      if (!typical(v, pv)) continue;
      double pp = 1.0, qq = 1.0;
      for (int i = 0; i < n; ++i) {
        pp *= p_uv.At({u[i], v[i]});
        qq *= q_uv.At({u[i], v[i]});
      }
      accept_p += pp;
      out.beta += qq;
    }
  }
  out.alpha = 1.0 - accept_p;
  return out;
}

TEST(ZeroRateTest, ErrorProbabilitiesMatchBruteForce) {
  const HypothesisPair pair = BinaryPair();
  for (int n : {1, 3, 5}) {
    for (double delta : {0.05, 0.2, 0.45}) {
      ASSERT_OK_AND_ASSIGN(ZeroRateErrors got,
                           ZeroRateErrorProbabilities(pair, delta, n));
      const ZeroRateErrors want = BruteForceZeroRate(pair, delta, n);
      EXPECT_NEAR(got.alpha, want.alpha, 1e-12) << n << " " << delta;
      EXPECT_NEAR(got.beta, want.beta, 1e-12) << n << " " << delta;
    }
  }
  for (int c = 0; c < 10; ++c) {
    auto gen = CaseGen("ZeroRateBruteForce", c);
    const HypothesisPair pair3 = RandomPair(gen, 2, 3, 2, 0.05);
    ASSERT_OK_AND_ASSIGN(ZeroRateErrors got,
                         ZeroRateErrorProbabilities(pair3, 0.15, 4));
    const ZeroRateErrors want = BruteForceZeroRate(pair3, 0.15, 4);
    EXPECT_NEAR(got.alpha, want.alpha, 1e-12);
    EXPECT_NEAR(got.beta, want.beta, 1e-12);
  }
}

TEST(CodebookTest, SizeBinsAndDeterminism) {
  const Pmf p_w = *Pmf::Create({0.5, 0.5});
  CodebookParams params;
  params.n = 6;
  params.eta = 0.1;
  params.mutual_information = 0.3;
  params.rate = 10.0;
  params.u_alphabet_size = 2;
  params.seed = 7;
  ASSERT_OK_AND_ASSIGN(Codebook cb, BuildCodebook(p_w, params));
  EXPECT_EQ(cb.size(), static_cast<int64_t>(std::ceil(std::exp(6 * 0.4))));
  EXPECT_TRUE(cb.identity_binning());
  EXPECT_EQ(cb.num_bins(), cb.size());
  ASSERT_OK_AND_ASSIGN(Codebook again, BuildCodebook(p_w, params));
  for (int64_t j = 0; j < cb.size(); ++j)
    EXPECT_EQ(cb.codeword(j), again.codeword(j));

  params.rate = 0.9;  // 6 * 0.9 - 4 log 7 > 0 while I + eta + 4 log 7 / 6 > R
  ASSERT_OK_AND_ASSIGN(Codebook binned, BuildCodebook(p_w, params));
  EXPECT_FALSE(binned.identity_binning());
  EXPECT_EQ(
      binned.num_bins(),
      static_cast<int64_t>(std::ceil(std::exp(6 * 0.9 - 4 * std::log(7.0)))));
  int64_t members = 0;
  for (int64_t b = 0; b < binned.num_bins(); ++b) {
    for (int64_t j : binned.BinMembers(b)) EXPECT_EQ(binned.bin(j), b);
    members += static_cast<int64_t>(binned.BinMembers(b).size());
  }
  EXPECT_EQ(members, binned.size());

  params.max_codewords = 8;
  absl::StatusOr<Codebook> capped = BuildCodebook(p_w, params);
  EXPECT_EQ(capped.status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(LikelihoodTest, ReverseChannelIsBayes) {
  const Pmf p_u = *Pmf::Create({0.25, 0.75});
  const Channel w = *Channel::Create({{0.9, 0.1}, {0.2, 0.8}});
  ASSERT_OK_AND_ASSIGN(Channel r, ReverseChannel(p_u, w));
  const double pw0 = 0.25 * 0.9 + 0.75 * 0.2;
  EXPECT_NEAR(r(0, 0), 0.25 * 0.9 / pw0, 1e-15);
  EXPECT_NEAR(r(1, 1), 0.75 * 0.8 / (1 - pw0), 1e-15);
  ASSERT_OK_AND_ASSIGN(Pmf p_w, Pmf::Create({pw0, 1 - pw0}));
  ASSERT_OK_AND_ASSIGN(Pmf back, InducedInputLaw(p_w, r));
  EXPECT_NEAR(back[0], 0.25, 1e-15);
}

TEST(LikelihoodTest, SelectionIsProportionalToLikelihood) {
  const Pmf p_w = *Pmf::Create({0.5, 0.5});
  CodebookParams params;
  params.n = 3;
  params.eta = 0.2;
  params.mutual_information = 0.2;
  params.rate = 5.0;
  params.u_alphabet_size = 2;
  ASSERT_OK_AND_ASSIGN(Codebook cb, BuildCodebook(p_w, params));
  const Channel u_given_w = *Channel::Create({{0.8, 0.2}, {0.3, 0.7}});
  const SequenceSample u = Seq({0, 1, 1}, 2);
  ASSERT_OK_AND_ASSIGN(std::vector<double> probs,
                       LikelihoodSelectionProbabilities(cb, u, u_given_w));
  ASSERT_EQ(static_cast<int64_t>(probs.size()), cb.size());
  std::vector<double> like(cb.size());
  double total = 0.0;
  for (int64_t j = 0; j < cb.size(); ++j) {
    like[j] = 1.0;
    for (int i = 0; i < 3; ++i) like[j] *= u_given_w(cb.codeword(j)[i], u[i]);
    total += like[j];
  }
  for (int64_t j = 0; j < cb.size(); ++j) {
    EXPECT_NEAR(probs[j], like[j] / total, 1e-14);
  }
}

TEST(LikelihoodTest, JointTypeIndexRanksCounts) {
  // Counts over (u, w) = (0,0):1 (0,1):1 (1,0):0 (1,1):2.
  ASSERT_OK_AND_ASSIGN(
      uint64_t t, JointTypeIndex(Seq({0, 0, 1, 1}, 2), Seq({0, 1, 1, 1}, 2)));
  EXPECT_EQ(t, *CompositionRank({1, 1, 0, 2}));
}

TEST(LikelihoodTest, IdentityBinningDecodesTheSentIndex) {
  const Pmf p_w = *Pmf::Create({0.5, 0.5});
  CodebookParams params;
  params.n = 4;
  params.mutual_information = 0.1;
  params.rate = 5.0;
  params.u_alphabet_size = 2;
  ASSERT_OK_AND_ASSIGN(Codebook cb, BuildCodebook(p_w, params));
  ASSERT_TRUE(cb.identity_binning());
  ASSERT_OK_AND_ASSIGN(
      std::optional<int64_t> j,
      MinEntropyDecode(cb, Message::Payload(0, 1), Seq({0, 1, 0, 1}, 2), 0.1));
  EXPECT_THAT(j, ::testing::Optional(1));
  EXPECT_FALSE(
      MinEntropyDecode(cb, Message::Error(), Seq({0, 1, 0, 1}, 2), 0.1).ok());
}

TEST(LikelihoodTest, DetectorRejectsErrorsAndAtypicalPairs) {
  DetectorConfig config{
      *JointPmf::Create({{"U", 2}, {"W", 2}}, {0.5, 0, 0, 0.5}),
      *JointPmf::Create({{"W", 2}, {"V", 2}}, {0.5, 0, 0, 0.5}), 0.05, 0.1,
      /*type_check=*/false};
  const SequenceSample w = Seq({0, 1, 0, 1}, 2);
  EXPECT_EQ(*Detect(w, w, Message::Payload(0, 0), config), Hypothesis::kNull);
  EXPECT_EQ(*Detect(w, Seq({1, 1, 0, 1}, 2), Message::Payload(0, 0), config),
            Hypothesis::kAlternate);
  EXPECT_EQ(*Detect(w, w, Message::Error(), config), Hypothesis::kAlternate);
  EXPECT_EQ(*Detect(std::nullopt, w, Message::Payload(0, 0), config),
            Hypothesis::kAlternate);
}

TEST(SchemeToleranceTest, DerivedSlacks) {
  SchemeTolerances t{0.04};
  EXPECT_DOUBLE_EQ(t.encoder(), 0.02);
  EXPECT_DOUBLE_EQ(t.decoder(3), 0.12);
  EXPECT_DOUBLE_EQ(t.detector(), 0.08);
}

TEST(WilsonIntervalTest, KnownValues) {
  const Interval a = WilsonInterval(0, 10);
  EXPECT_NEAR(a.lower, 0.0, 1e-15);
  EXPECT_NEAR(a.upper, 0.2775327998628892, 1e-12);
  const Interval b = WilsonInterval(5, 10);
  EXPECT_NEAR(b.lower, 0.236593090512564, 1e-12);
  EXPECT_NEAR(b.upper, 0.7634069094874361, 1e-12);
  const Interval c = WilsonInterval(3, 100);
  EXPECT_NEAR(c.lower, 0.010254524024038925, 1e-12);
  EXPECT_NEAR(c.upper, 0.0845193642905276, 1e-12);
}

TEST(SchemeConfigTest, ParsesAndRejects) {
  ASSERT_OK_AND_ASSIGN(
      SchemeConfig c,
      SchemeConfigFromJson(
          R"({"scheme": "timeshare", "n": 6, "epsilon_star": 0.3,
                               "trials": 50, "seed": 9})"));
  EXPECT_EQ(c.scheme, SchemeKind::kTimeshare);
  EXPECT_EQ(c.n, 6);
  EXPECT_DOUBLE_EQ(c.epsilon_star, 0.3);
  EXPECT_EQ(c.trials, 50);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.delta, 0.05);
  EXPECT_FALSE(SchemeConfigFromJson(R"({"scheme": "nope"})").ok());
  EXPECT_FALSE(SchemeConfigFromJson("[1]").ok());
  EXPECT_FALSE(SchemeConfigFromJson("{").ok());
  EXPECT_EQ(SchemeKindName(*ParseSchemeKind("zero_rate")), "zero_rate");
}

TEST(RunTrialsTest, ZeroRateAgreesWithExactErrors) {
  const HypothesisPair pair = BinaryPair();
  SchemeConfig config;
  config.scheme = SchemeKind::kZeroRate;
  config.n = 4;
  config.delta = 0.2;
  config.trials = 4000;
  config.seed = testing::kMasterSeed;
  ASSERT_OK_AND_ASSIGN(TrialStats stats, RunTrials(config, pair));
  ASSERT_OK_AND_ASSIGN(ZeroRateErrors exact,
                       ZeroRateErrorProbabilities(pair, 0.2, 4));
  const double sa = std::sqrt(exact.alpha * (1 - exact.alpha) / config.trials);
  const double sb = std::sqrt(exact.beta * (1 - exact.beta) / config.trials);
  EXPECT_THAT(stats.alpha_hat, DoubleNear(exact.alpha, 4 * sa));
  EXPECT_THAT(stats.beta_hat, DoubleNear(exact.beta, 4 * sb));
  EXPECT_LE(stats.alpha_interval.lower, stats.alpha_hat);
  EXPECT_GE(stats.alpha_interval.upper, stats.alpha_hat);
}

TEST(RunTrialsTest, IndependentOfWorkerCount) {
  const HypothesisPair pair = BinaryPair();
  SchemeConfig config;
  config.scheme = SchemeKind::kTimeshare;
  config.n = 5;
  config.delta = 0.1;
  config.epsilon_star = 0.3;
  config.trials = 300;
  setenv("HTPL_THREADS", "1", 1);
  ASSERT_OK_AND_ASSIGN(TrialStats one, RunTrials(config, pair));
  setenv("HTPL_THREADS", "3", 1);
  ASSERT_OK_AND_ASSIGN(TrialStats three, RunTrials(config, pair));
  unsetenv("HTPL_THREADS");
  EXPECT_EQ(one.type1_errors, three.type1_errors);
  EXPECT_EQ(one.type2_errors, three.type2_errors);
}

TEST(RunTrialsTest, LikelihoodRunsEndToEnd) {
  const HypothesisPair pair = BinaryPair();
  SchemeConfig config;
  config.scheme = SchemeKind::kLikelihood;
  config.n = 4;
  config.delta = 0.1;
  config.rate_nats = 2.0;
  config.trials = 100;
  config.w_channel = *Channel::Create({{0.9, 0.1}, {0.1, 0.9}});
  ASSERT_OK_AND_ASSIGN(TrialStats stats, RunTrials(config, pair));
  EXPECT_EQ(stats.trials, 100);
  EXPECT_GE(stats.alpha_hat, 0.0);
  EXPECT_LE(stats.beta_hat, 1.0);

  config.w_channel.reset();
  absl::StatusOr<TrialStats> missing = RunTrials(config, pair);
  EXPECT_EQ(missing.status().code(), absl::StatusCode::kInvalidArgument);
  config.trials = 0;
  EXPECT_FALSE(RunTrials(config, pair).ok());
}

}  // namespace
}  // namespace htpl
