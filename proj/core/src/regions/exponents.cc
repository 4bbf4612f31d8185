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

#include "htpl/regions/exponents.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/numeric.h"

namespace htpl {
namespace {

absl::Status CheckChannel(const HypothesisPair& pair, const Channel& w) {
  if (w.input_size() != pair.u_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("auxiliary channel input size ", w.input_size(),
                     " does not match |U| = ", pair.u_size()));
  }
  return absl::OkStatus();
}

ExponentResult FromCoupling(const CouplingResult& r) {
  ExponentResult out;
  out.value = r.divergence;
  out.coupling = r.coupling;
  out.max_residual = r.max_residual;
  out.converged = r.converged;
  return out;
}

}  // namespace

absl::StatusOr<JointPmf> ExponentReference(const HypothesisPair& pair,
                                           const Channel& w) {
  if (absl::Status s = CheckChannel(pair, w); !s.ok()) return s;
  absl::StatusOr<JointPmf> q_uv = pair.q_suv().Marginal({"U", "V"});
  if (!q_uv.ok()) return q_uv.status();
  return q_uv->WithChannel("U", w, "W");
}

absl::StatusOr<JointPmf> NullLawWithAuxiliary(const HypothesisPair& pair,
                                              const Channel& w) {
  if (absl::Status s = CheckChannel(pair, w); !s.ok()) return s;
  absl::StatusOr<JointPmf> p_uv = pair.p_suv().Marginal({"U", "V"});
  if (!p_uv.ok()) return p_uv.status();
  return p_uv->WithChannel("U", w, "W");
}

absl::StatusOr<CouplingProblem> E1Problem(const HypothesisPair& pair,
                                          const Channel& w) {
  absl::StatusOr<JointPmf> reference = ExponentReference(pair, w);
  if (!reference.ok()) return reference.status();
  absl::StatusOr<JointPmf> p_uvw = NullLawWithAuxiliary(pair, w);
  if (!p_uvw.ok()) return p_uvw.status();
  absl::StatusOr<JointPmf> p_uw = p_uvw->Marginal({"U", "W"});
  if (!p_uw.ok()) return p_uw.status();
  absl::StatusOr<JointPmf> p_vw = p_uvw->Marginal({"V", "W"});
  if (!p_vw.ok()) return p_vw.status();
  return CouplingProblem{*std::move(reference),
                         {MarginalConstraint{{"U", "W"}, *std::move(p_uw)},
                          MarginalConstraint{{"V", "W"}, *std::move(p_vw)}},
                         std::nullopt};
}

absl::StatusOr<ExponentResult> ExponentE1(const HypothesisPair& pair,
                                          const Channel& w,
                                          const CouplingOptions& options) {
  absl::StatusOr<CouplingProblem> problem = E1Problem(pair, w);
  if (!problem.ok()) return problem.status();
  absl::StatusOr<CouplingResult> result = SolveCoupling(*problem, options);
  if (!result.ok()) return result.status();
  return FromCoupling(*result);
}

absl::StatusOr<CouplingProblem> L2Problem(const HypothesisPair& pair,
                                          const Channel& w) {
  absl::StatusOr<JointPmf> reference = ExponentReference(pair, w);
  if (!reference.ok()) return reference.status();
  absl::StatusOr<JointPmf> p_uvw = NullLawWithAuxiliary(pair, w);
  if (!p_uvw.ok()) return p_uvw.status();
  absl::StatusOr<JointPmf> p_uw = p_uvw->Marginal({"U", "W"});
  if (!p_uw.ok()) return p_uw.status();
  absl::StatusOr<JointPmf> p_v = p_uvw->Marginal({"V"});
  if (!p_v.ok()) return p_v.status();
  absl::StatusOr<double> h_w_given_v = ConditionalEntropy(*p_uvw, {"W"}, {"V"});
  if (!h_w_given_v.ok()) return h_w_given_v.status();
  return CouplingProblem{*std::move(reference),
                         {MarginalConstraint{{"U", "W"}, *std::move(p_uw)},
                          MarginalConstraint{{"V"}, *std::move(p_v)}},
                         ConditionalEntropyFloor{{"W"}, {"V"}, *h_w_given_v}};
}

absl::StatusOr<ExponentResult> L2Divergence(const HypothesisPair& pair,
                                            const Channel& w,
                                            const CouplingOptions& options) {
  absl::StatusOr<CouplingProblem> problem = L2Problem(pair, w);
  if (!problem.ok()) return problem.status();
  absl::StatusOr<CouplingResult> result = SolveCoupling(*problem, options);
  if (!result.ok()) return result.status();
  return FromCoupling(*result);
}

absl::StatusOr<ExponentResult> ExponentE2(double rate,
                                          const HypothesisPair& pair,
                                          const Channel& w,
                                          const CouplingOptions& options) {
  if (!(rate >= 0.0)) return absl::InvalidArgumentError("rate must be >= 0");
  absl::StatusOr<JointPmf> p_uvw = NullLawWithAuxiliary(pair, w);
  if (!p_uvw.ok()) return p_uvw.status();
  absl::StatusOr<double> i_uw = MutualInformation(*p_uvw, {"U"}, {"W"});
  if (!i_uw.ok()) return i_uw.status();
  if (*i_uw <= rate + 1e-12) {
    ExponentResult out;
    out.value = kInfinity;
    return out;
  }
  absl::StatusOr<double> i_uw_given_v =
      ConditionalMutualInformation(*p_uvw, {"U"}, {"W"}, {"V"});
  if (!i_uw_given_v.ok()) return i_uw_given_v.status();
  absl::StatusOr<ExponentResult> l2 = L2Divergence(pair, w, options);
  if (!l2.ok()) return l2.status();
  if (!std::isinf(l2->value)) l2->value += rate - *i_uw_given_v;
  return l2;
}

absl::StatusOr<double> KappaStar(double rate, const HypothesisPair& pair,
                                 const Channel& w) {
  absl::StatusOr<ExponentResult> e1 = ExponentE1(pair, w);
  if (!e1.ok()) return e1.status();
  absl::StatusOr<ExponentResult> e2 = ExponentE2(rate, pair, w);
  if (!e2.ok()) return e2.status();
  return std::min(e1->value, e2->value);
}

absl::StatusOr<ExponentResult> ZeroRateExponent(
    const Pmf& p_u, const Pmf& p_v, const JointPmf& q_uv,
    const CouplingOptions& options) {
  if (q_uv.rank() != 2 || q_uv.axes()[0].size != p_u.size() ||
      q_uv.axes()[1].size != p_v.size()) {
    return absl::InvalidArgumentError(
        "q_uv must be a two-axis law of shape |U| x |V|");
  }
  absl::StatusOr<JointPmf> reference = JointPmf::Create(
      {Axis{"U", p_u.size()}, Axis{"V", p_v.size()}},
      std::vector<double>(q_uv.probs().begin(), q_uv.probs().end()));
  if (!reference.ok()) return reference.status();
  CouplingProblem problem{
      *std::move(reference),
      {MarginalConstraint{{"U"}, JointPmf::FromPmf("U", p_u)},
       MarginalConstraint{{"V"}, JointPmf::FromPmf("V", p_v)}},
      std::nullopt};
  absl::StatusOr<CouplingResult> result = SolveCoupling(problem, options);
  if (!result.ok()) return result.status();
  return FromCoupling(*result);
}

absl::StatusOr<ExponentResult> ZeroRateExponent(const HypothesisPair& pair) {
  absl::StatusOr<Pmf> p_u = pair.p_suv().MarginalPmf("U");
  if (!p_u.ok()) return p_u.status();
  absl::StatusOr<Pmf> p_v = pair.p_suv().MarginalPmf("V");
  if (!p_v.ok()) return p_v.status();
  absl::StatusOr<JointPmf> q_uv = pair.q_suv().Marginal({"U", "V"});
  if (!q_uv.ok()) return q_uv.status();
  return ZeroRateExponent(*p_u, *p_v, *q_uv);
}

}  // namespace htpl
