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
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "htpl/probcore/binary.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/json_io.h"
#include "htpl/probcore/numeric.h"
#include "htpl/probcore/parallel.h"
#include "htpl/probcore/pmf.h"
#include "htpl/probcore/rng.h"
#include "htpl/probcore/typicality.h"
#include "htpl/regions/binary_family.h"
#include "test_support.h"

namespace htpl {
namespace {

using ::testing::DoubleNear;
using ::testing::HasSubstr;

SequenceSample Seq(std::vector<int> symbols, int alphabet) {
  return *SequenceSample::Create(std::move(symbols), alphabet);
}

TEST(PmfTest, RejectsBadInput) {
  EXPECT_FALSE(Pmf::Create({0.5, 0.6}).ok());
  EXPECT_FALSE(Pmf::Create({-0.1, 1.1}).ok());
  EXPECT_FALSE(Pmf::Create({}).ok());
  EXPECT_TRUE(Pmf::Create({0.25, 0.75}).ok());
}

TEST(PmfTest, JointMarginalAndGrouping) {
  ASSERT_OK_AND_ASSIGN(
      JointPmf j,
      JointPmf::Create({{"X", 2}, {"Y", 3}}, {0.1, 0.2, 0.1, 0.3, 0.2, 0.1}));
  ASSERT_OK_AND_ASSIGN(Pmf x, j.MarginalPmf("X"));
  EXPECT_NEAR(x[0], 0.4, 1e-15);
  ASSERT_OK_AND_ASSIGN(JointPmf yx, j.Marginal({"Y", "X"}));
  EXPECT_NEAR(yx.At({2, 1}), 0.1, 1e-15);
  EXPECT_NEAR(yx.At({0, 1}), 0.3, 1e-15);
  ASSERT_OK_AND_ASSIGN(JointPmf g, j.Grouped({{"XY", {"X", "Y"}}, {"E", {}}}));
  EXPECT_EQ(g.axes()[0].size, 6);
  EXPECT_EQ(g.axes()[1].size, 1);
  EXPECT_FALSE(j.Marginal({"Q"}).ok());
}

TEST(PmfTest, WithChannelAppendsAxis) {
  JointPmf u = JointPmf::FromPmf("U", Pmf::Uniform(2));
  ASSERT_OK_AND_ASSIGN(Channel c, Channel::Create({{0.9, 0.1}, {0.2, 0.8}}));
  ASSERT_OK_AND_ASSIGN(JointPmf uw, u.WithChannel("U", c, "W"));
  EXPECT_EQ(uw.AxisNames(), (std::vector<std::string>{"U", "W"}));
  EXPECT_NEAR(uw.At({1, 0}), 0.1, 1e-15);
}

TEST(EntropyTest, Examples) {
  EXPECT_NEAR(Entropy(Pmf::Uniform(4)), std::log(4.0), 1e-15);
  EXPECT_NEAR(NatsToBits(Entropy(Pmf::Uniform(4))), 2.0, 1e-14);
  EXPECT_EQ(Entropy(Pmf::PointMass(2, 0)), 0.0);
  // -(0.25 log 0.25 + 0.75 log 0.75) = 0.5623351446188083
  EXPECT_NEAR(Entropy(*Pmf::Create({0.25, 0.75})), 0.5623351446188083, 1e-15);
}

TEST(KlDivergenceTest, Examples) {
  const Pmf p = *Pmf::Create({0.3, 0.7});
  EXPECT_EQ(*KlDivergence(p, p), 0.0);
  EXPECT_NEAR(*KlDivergence(Pmf::PointMass(2, 0), Pmf::Uniform(2)),
              std::log(2.0), 1e-15);
  EXPECT_EQ(*KlDivergence(Pmf::Uniform(2), Pmf::PointMass(2, 0)), kInfinity);
  EXPECT_FALSE(KlDivergence(Pmf::Uniform(2), Pmf::Uniform(3)).ok());
}

TEST(InformationTest, Examples) {
  ASSERT_OK_AND_ASSIGN(
      JointPmf product,
      JointPmf::Product(JointPmf::FromPmf("X", *Pmf::Create({0.2, 0.8})),
                        JointPmf::FromPmf("Y", *Pmf::Create({0.6, 0.4}))));
  EXPECT_NEAR(*MutualInformation(product, {"X"}, {"Y"}), 0.0, 1e-15);

  ASSERT_OK_AND_ASSIGN(JointPmf copy, JointPmf::Create({{"X", 2}, {"Y", 2}},
                                                       {0.3, 0.0, 0.0, 0.7}));
  EXPECT_NEAR(*ConditionalEntropy(copy, {"X"}, {"Y"}), 0.0, 1e-15);
  EXPECT_FALSE(ConditionalEntropy(copy, {"X"}, {"X"}).ok());
  EXPECT_FALSE(MutualInformation(copy, {"X"}, {"Nope"}).ok());
}

TEST(InformationTest, PerfectPrivacyAuxiliaryCarriesOneBit) {
  const HypothesisPair pair = PerfectPrivacyInstance();
  ASSERT_OK_AND_ASSIGN(Channel w, Channel::Deterministic({0, 1, 0, 1}, 2));
  ASSERT_OK_AND_ASSIGN(JointPmf with_w, pair.p().WithChannel("U", w, "W"));
  EXPECT_NEAR(NatsToBits(*MutualInformation(with_w, {"U"}, {"W"})), 1.0, 1e-12);
}

TEST(TotalVariationTest, Examples) {
  const Pmf p = *Pmf::Create({0.6, 0.4});
  EXPECT_EQ(*TotalVariation(p, p), 0.0);
  EXPECT_NEAR(*TotalVariation(Pmf::PointMass(2, 0), Pmf::PointMass(2, 1)), 1.0,
              1e-15);
  EXPECT_NEAR(*TotalVariation(p, Pmf::Uniform(2)), 0.1, 1e-15);
  EXPECT_FALSE(TotalVariation(p, Pmf::Uniform(3)).ok());
}

TEST(BinaryTest, Examples) {
  EXPECT_NEAR(*BinaryEntropy(0.5), 1.0, 1e-15);
  EXPECT_NEAR(*Star(0.5, 0.3), 0.5, 1e-15);
  EXPECT_NEAR(*Star(0.1, 0.2), 0.26, 1e-15);
  EXPECT_FALSE(BinaryEntropy(1.5).ok());
  EXPECT_FALSE(InverseBinaryEntropy(-0.1).ok());
  EXPECT_FALSE(Star(2.0, 0.1).ok());
  ASSERT_OK_AND_ASSIGN(double t, InverseBinaryEntropy(*BinaryEntropy(0.11)));
  EXPECT_NEAR(t, 0.11, 1e-10);
}

TEST(TypicalityTest, Examples) {
  EXPECT_TRUE(*IsTypical(Seq({0, 1, 0, 1}, 2), Pmf::Uniform(2), 0.0));
  EXPECT_FALSE(*IsTypical(Seq({0, 0, 0, 1}, 2), Pmf::Uniform(2), 0.1));
  EXPECT_FALSE(IsTypical(Seq({0, 2}, 3), Pmf::Uniform(2), 0.1).ok());
}

TEST(TypicalityTest, EmpiricalConditionalEntropy) {
  const SequenceSample x = Seq({0, 1, 2, 2, 1}, 3);
  const SequenceSample y = Seq({1, 0, 0, 0, 0}, 2);  // y = (x == 0)
  EXPECT_NEAR(*EmpiricalConditionalEntropy(y, x), 0.0, 1e-15);
  // x given y: y=1 pins x=0; y=0 leaves x uniform-ish over {1,2,2,1}.
  EXPECT_NEAR(*EmpiricalConditionalEntropy(x, y), 0.8 * std::log(2.0), 1e-15);
  EXPECT_FALSE(EmpiricalConditionalEntropy(x, Seq({0, 1}, 2)).ok());
}

TEST(TypicalityTest, JointTypeIsEmpiricalLaw) {
  ASSERT_OK_AND_ASSIGN(JointPmf t,
                       JointType(Seq({0, 0, 1, 1}, 2), Seq({0, 1, 1, 1}, 2)));
  EXPECT_THAT(t.probs(), ::testing::ElementsAre(0.25, 0.25, 0.0, 0.5));
}

TEST(CompositionTest, RankRoundTrip) {
  ASSERT_OK_AND_ASSIGN(uint64_t count, CompositionCount(5, 3));
  EXPECT_EQ(count, 21u);
  for (uint64_t r = 0; r < count; ++r) {
    ASSERT_OK_AND_ASSIGN(std::vector<int> c, CompositionUnrank(r, 5, 3));
    EXPECT_EQ(*CompositionRank(c), r);
  }
  EXPECT_EQ(*CompositionRank({0, 0, 5}), 0u);
  EXPECT_EQ(*CompositionRank({5, 0, 0}), 20u);
}

TEST(JsonIoTest, RoundTrip) {
  ASSERT_OK_AND_ASSIGN(
      JointPmf j, JointPmf::Create({{"A", 2}, {"B", 2}}, {0.1, 0.2, 0.3, 0.4}));
  ASSERT_OK_AND_ASSIGN(JointPmf back, JointPmfFromJson(JointPmfToJson(j)));
  EXPECT_EQ(back.axes(), j.axes());
  EXPECT_THAT(back.probs(), ::testing::ElementsAreArray(j.probs()));
}

TEST(JsonIoTest, ErrorsCarryContext) {
  absl::StatusOr<JointPmf> bad = JointPmfFromJson("{\"axes\": [}");
  ASSERT_FALSE(bad.ok());
  EXPECT_THAT(bad.status().message(), HasSubstr("line 1"));
  bad = JointPmfFromJson(
      R"({"axes":[{"name":"X","size":2}],"probs":[0.5,0.49]})");
  ASSERT_FALSE(bad.ok());
}

TEST(RngTest, CounterStreamsAreReproducible) {
  CounterRng a(7, 3);
  CounterRng b(7, 3);
  CounterRng c(7, 4);
  for (int i = 0; i < 10; ++i) {
    const uint64_t x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
}

TEST(ParallelTest, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  ParallelFor(hits.size(), [&](size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(NumericTest, CompensatedSumRecoversSmallTerms) {
  CompensatedSum s;
  s.Add(1.0);
  for (int i = 0; i < 1000; ++i) s.Add(1e-16);
  s.Add(-1.0);
  EXPECT_NEAR(s.Total(), 1e-13, 1e-20);
}

}  // namespace
}  // namespace htpl
