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

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/numeric.h"
#include "htpl/regions/binary_family.h"
#include "htpl/regions/coupling.h"
#include "htpl/regions/exponents.h"
#include "htpl/regions/hypothesis_pair.h"
#include "htpl/regions/tradeoff.h"
#include "test_support.h"

namespace htpl {
namespace {

using testing::CaseGen;
using testing::kPropertyCases;
using testing::RandomChannel;
using testing::RandomPair;
using testing::RandomTaciPair;
using testing::UniformInt;
using testing::UniformReal;

struct Instance {
  HypothesisPair pair;
  Channel w;
};

Instance RandomInstance(testing::Gen& gen) {
  const int u = UniformInt(gen, 2, 3), v = UniformInt(gen, 2, 3);
  HypothesisPair pair = RandomPair(gen, 2, u, v, 0.05);
  Channel w = RandomChannel(gen, u, UniformInt(gen, 2, 3), 0.05);
  return {std::move(pair), std::move(w)};
}

// Checks the certificate shipped with an optimizer result against its
// problem: marginal residuals, the entropy floor, and the objective.
void ExpectCertificate(const CouplingProblem& problem,
                       const ExponentResult& r) {
  ASSERT_TRUE(r.coupling.has_value());
  for (const MarginalConstraint& c : problem.marginals) {
    ASSERT_OK_AND_ASSIGN(JointPmf m, r.coupling->Marginal(c.axes));
    for (size_t i = 0; i < m.num_cells(); ++i) {
      EXPECT_LT(std::abs(m[i] - c.target[i]), 1e-9);
    }
  }
  if (problem.entropy_floor.has_value()) {
    const ConditionalEntropyFloor& f = *problem.entropy_floor;
    EXPECT_GE(*ConditionalEntropy(*r.coupling, f.target, f.given),
              f.min_nats - 1e-9);
  }
  EXPECT_LT(std::abs(*KlDivergence(*r.coupling, problem.reference) - r.value),
            1e-10);
}

std::vector<double> RandomStart(testing::Gen& gen, size_t cells) {
  std::vector<double> start(cells);
  for (double& x : start) x = UniformReal(gen, 0.05, 1.0);
  return start;
}

TEST(RegionsProperty, OptimizersShipCertificates) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("OptimizersShipCertificates", c);
    const Instance in = RandomInstance(gen);
    ASSERT_OK_AND_ASSIGN(CouplingProblem e1p, E1Problem(in.pair, in.w));
    ASSERT_OK_AND_ASSIGN(ExponentResult e1, ExponentE1(in.pair, in.w));
    ExpectCertificate(e1p, e1);
    ASSERT_OK_AND_ASSIGN(CouplingProblem l2p, L2Problem(in.pair, in.w));
    ASSERT_OK_AND_ASSIGN(ExponentResult l2, L2Divergence(in.pair, in.w));
    ExpectCertificate(l2p, l2);
    EXPECT_TRUE(*SupportFeasible(e1p));

    ASSERT_OK_AND_ASSIGN(ExponentResult zr, ZeroRateExponent(in.pair));
    ASSERT_TRUE(zr.coupling.has_value());
    const JointPmf q_uv = *in.pair.q_suv().Marginal({"U", "V"});
    EXPECT_LT(std::abs(*KlDivergence(*zr.coupling, q_uv) - zr.value), 1e-10);
    const JointPmf p_u = *in.pair.p_suv().Marginal({"U"});
    const JointPmf p_v = *in.pair.p_suv().Marginal({"V"});
    const JointPmf got_u = *zr.coupling->Marginal({"U"});
    const JointPmf got_v = *zr.coupling->Marginal({"V"});
    for (size_t i = 0; i < p_u.num_cells(); ++i)
      EXPECT_LT(std::abs(got_u[i] - p_u[i]), 1e-9);
    for (size_t i = 0; i < p_v.num_cells(); ++i)
      EXPECT_LT(std::abs(got_v[i] - p_v[i]), 1e-9);
  }
}

TEST(RegionsProperty, ConvexProgramsIgnoreTheStartPoint) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("ConvexProgramsIgnoreTheStartPoint", c);
    const Instance in = RandomInstance(gen);
    ASSERT_OK_AND_ASSIGN(ExponentResult e1, ExponentE1(in.pair, in.w));
    const Pmf p_u = *in.pair.p_suv().MarginalPmf("U");
    const Pmf p_v = *in.pair.p_suv().MarginalPmf("V");
    const JointPmf q_uv = *in.pair.q_suv().Marginal({"U", "V"});
    ASSERT_OK_AND_ASSIGN(ExponentResult zr, ZeroRateExponent(p_u, p_v, q_uv));
    for (int k = 0; k < 5; ++k) {
      CouplingOptions options;
      options.start = RandomStart(gen, e1.coupling->num_cells());
      ASSERT_OK_AND_ASSIGN(ExponentResult again,
                           ExponentE1(in.pair, in.w, options));
      EXPECT_NEAR(again.value, e1.value, 1e-7);
      options.start = RandomStart(gen, q_uv.num_cells());
      ASSERT_OK_AND_ASSIGN(ExponentResult zr_again,
                           ZeroRateExponent(p_u, p_v, q_uv, options));
      EXPECT_NEAR(zr_again.value, zr.value, 1e-7);
    }
  }
}

TEST(RegionsProperty, KappaIsMonotoneAndBelowE1) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("KappaIsMonotoneAndBelowE1", c);
    const Instance in = RandomInstance(gen);
    const double r1 = UniformReal(gen, 0, 1.2);
    const double r2 = r1 + UniformReal(gen, 0, 0.5);
    ASSERT_OK_AND_ASSIGN(double k1, KappaStar(r1, in.pair, in.w));
    ASSERT_OK_AND_ASSIGN(double k2, KappaStar(r2, in.pair, in.w));
    ASSERT_OK_AND_ASSIGN(ExponentResult e1, ExponentE1(in.pair, in.w));
    EXPECT_LE(k1, k2 + 1e-9);
    EXPECT_LE(k2, e1.value + 1e-12);
  }
}

// H(S | W, V) of P_SUV composed with w, summed by hand.
double HandEquivocation(const JointPmf& law, const Channel& w) {
  const int ns = law.axes()[0].size, nu = law.axes()[1].size,
            nv = law.axes()[2].size, nw = w.output_size();
  std::vector<double> swv(ns * nw * nv, 0.0), wv(nw * nv, 0.0);
  for (int s = 0; s < ns; ++s) {
    for (int u = 0; u < nu; ++u) {
      for (int v = 0; v < nv; ++v) {
        for (int k = 0; k < nw; ++k) {
          const double p = law.At({s, u, v}) * w(u, k);
          swv[(s * nw + k) * nv + v] += p;
          wv[k * nv + v] += p;
        }
      }
    }
  }
  double h = 0.0;
  for (double p : swv) h -= XLogX(p);
  for (double p : wv) h += XLogX(p);
  return h;
}

TEST(RegionsProperty, BoundPointsStayInRange) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("BoundPointsStayInRange", c);
    const Instance in = RandomInstance(gen);
    const double rate = UniformReal(gen, 0, 1.5);
    ASSERT_OK_AND_ASSIGN(TradeoffPoint eq,
                         EquivocationBoundPoint(in.pair, in.w, rate));
    const double log_s = std::log(static_cast<double>(in.pair.s_size()));
    EXPECT_GE(eq.rate, 0.0);
    EXPECT_GE(eq.exponent, 0.0);
    for (double priv : {eq.privacy0, eq.privacy1}) {
      EXPECT_GE(priv, -1e-12);
      EXPECT_LE(priv, log_s + 1e-12);
    }
    const double h_s = Entropy(*in.pair.p_suv().MarginalPmf("S"));
    EXPECT_LE(eq.privacy0, h_s + 1e-12);
    EXPECT_NEAR(eq.privacy0, HandEquivocation(in.pair.p_suv(), in.w), 1e-10);

    ASSERT_OK_AND_ASSIGN(TradeoffPoint dist,
                         DistortionBoundPoint(in.pair, in.w, rate));
    const double d_max = in.pair.distortion()->d_max();
    for (double priv : {dist.privacy0, dist.privacy1}) {
      EXPECT_GE(priv, -1e-12);
      EXPECT_LE(priv, d_max + 1e-12);
    }
  }
}

TEST(RegionsProperty, TaciExponentNeverExceedsRate) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("TaciExponentNeverExceedsRate", c);
    const int u = UniformInt(gen, 2, 3);
    const HypothesisPair pair =
        RandomTaciPair(gen, 2, u, UniformInt(gen, 2, 3), UniformInt(gen, 1, 3));
    const Channel w = RandomChannel(gen, u, UniformInt(gen, 1, 4));
    ASSERT_OK_AND_ASSIGN(TaciCoordinates t, TaciPoint(pair.p(), w));
    EXPECT_LE(t.exponent, t.rate_needed + 1e-12);
    EXPECT_GE(t.exponent, -1e-15);
  }
}

TEST(RegionsProperty, BinaryFamilyClosedFormMatchesChannelPoint) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("BinaryFamilyClosedForm", c);
    const double p = UniformReal(gen, 0, 0.5);
    const double q = UniformReal(gen, 0, 0.5);
    const double r = UniformReal(gen, 0, 0.5);
    ASSERT_OK_AND_ASSIGN(HypothesisPair pair, BinaryFamilyInstance(p, q));
    ASSERT_OK_AND_ASSIGN(Channel bsc, BinarySymmetricChannel(r));
    ASSERT_OK_AND_ASSIGN(TaciCoordinates t, TaciPoint(pair.p(), bsc));
    ASSERT_OK_AND_ASSIGN(BinaryFamilyPoint closed,
                         BinaryFamilyClosedForm(p, q, r));
    EXPECT_NEAR(NatsToBits(t.rate_needed), closed.rate_bits, 1e-10);
    EXPECT_NEAR(NatsToBits(t.exponent), closed.kappa_bits, 1e-10);
    EXPECT_NEAR(NatsToBits(t.equivocation0), closed.lambda0_bits, 1e-10);
  }
}

TEST(RegionsProperty, PairShapesAndDistortionValidate) {
  for (int c = 0; c < kPropertyCases; ++c) {
    auto gen = CaseGen("PairShapesAndDistortionValidate", c);
    const int s = UniformInt(gen, 1, 3);
    const double d_max = UniformReal(gen, 0.5, 2);
    std::vector<std::vector<double>> table(s, std::vector<double>(s));
    for (auto& row : table) {
      for (double& x : row) x = UniformReal(gen, 0, d_max);
    }
    EXPECT_TRUE(Distortion::Create(table, d_max).ok());
    table[UniformInt(gen, 0, s - 1)][0] = d_max * 1.01;
    EXPECT_FALSE(Distortion::Create(table, d_max).ok());

    const HypothesisPair pair = RandomPair(gen, s, 2, 2);
    const JointPmf other =
        testing::RandomJoint(gen, {{"S", s}, {"U", 3}, {"V", 2}});
    EXPECT_FALSE(HypothesisPair::Create(pair.p(), other).ok());
  }
}

}  // namespace
}  // namespace htpl
