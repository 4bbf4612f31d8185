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

#include "htpl/probcore/information.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/numeric.h"

namespace htpl {
namespace {

absl::Status CheckDisjoint(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  for (const std::string& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("axis '", x, "' appears in two arguments"));
    }
  }
  return absl::OkStatus();
}

std::vector<std::string> Concat(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

absl::Status CheckSameAxes(const JointPmf& p, const JointPmf& q) {
  if (p.axes() != q.axes()) {
    return absl::InvalidArgumentError("joint pmfs have different axes");
  }
  return absl::OkStatus();
}

}  // namespace

double Entropy(absl::Span<const double> probs) {
  CompensatedSum sum;
  for (double p : probs) sum.Add(-XLogX(p));
  return std::max(0.0, sum.Total());
}

double Entropy(const Pmf& p) { return Entropy(p.probs()); }

absl::StatusOr<double> KlDivergence(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("support sizes differ: ", p.size(), " vs ", q.size()));
  }
  CompensatedSum sum;
  for (int i = 0; i < p.size(); ++i) {
    const double term = XLogXOverY(p[i], q[i]);
    if (std::isinf(term)) return kInfinity;
    sum.Add(term);
  }
  return std::max(0.0, sum.Total());
}

absl::StatusOr<double> KlDivergence(const JointPmf& p, const JointPmf& q) {
  if (absl::Status s = CheckSameAxes(p, q); !s.ok()) return s;
  CompensatedSum sum;
  for (size_t i = 0; i < p.num_cells(); ++i) {
    const double term = XLogXOverY(p[i], q[i]);
    if (std::isinf(term)) return kInfinity;
    sum.Add(term);
  }
  return std::max(0.0, sum.Total());
}

absl::StatusOr<double> JointEntropy(const JointPmf& j,
                                    const std::vector<std::string>& axes) {
  absl::StatusOr<JointPmf> marginal = j.Marginal(axes);
  if (!marginal.ok()) return marginal.status();
  return Entropy(marginal->probs());
}

absl::StatusOr<double> ConditionalEntropy(
    const JointPmf& j, const std::vector<std::string>& target,
    const std::vector<std::string>& given) {
  if (absl::Status s = CheckDisjoint(target, given); !s.ok()) return s;
  absl::StatusOr<double> joint = JointEntropy(j, Concat(target, given));
  if (!joint.ok()) return joint.status();
  absl::StatusOr<double> cond = JointEntropy(j, given);
  if (!cond.ok()) return cond.status();
  return std::max(0.0, *joint - *cond);
}

absl::StatusOr<double> MutualInformation(const JointPmf& j,
                                         const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  return ConditionalMutualInformation(j, a, b, {});
}

absl::StatusOr<double> ConditionalMutualInformation(
    const JointPmf& j, const std::vector<std::string>& a,
    const std::vector<std::string>& b, const std::vector<std::string>& given) {
  if (absl::Status s = CheckDisjoint(a, b); !s.ok()) return s;
  if (absl::Status s = CheckDisjoint(a, given); !s.ok()) return s;
  if (absl::Status s = CheckDisjoint(b, given); !s.ok()) return s;
  // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C).
  absl::StatusOr<double> h_ac = JointEntropy(j, Concat(a, given));
  if (!h_ac.ok()) return h_ac.status();
  absl::StatusOr<double> h_bc = JointEntropy(j, Concat(b, given));
  if (!h_bc.ok()) return h_bc.status();
  absl::StatusOr<double> h_abc = JointEntropy(j, Concat(Concat(a, b), given));
  if (!h_abc.ok()) return h_abc.status();
  absl::StatusOr<double> h_c = JointEntropy(j, given);
  if (!h_c.ok()) return h_c.status();
  CompensatedSum sum;
  sum.Add(*h_ac);
  sum.Add(*h_bc);
  sum.Add(-*h_abc);
  sum.Add(-*h_c);
  return std::max(0.0, sum.Total());
}

double TotalVariation(absl::Span<const double> p, absl::Span<const double> q) {
  CompensatedSum sum;
  for (size_t i = 0; i < p.size(); ++i) sum.Add(std::abs(p[i] - q[i]));
  return std::clamp(0.5 * sum.Total(), 0.0, 1.0);
}

absl::StatusOr<double> TotalVariation(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("support sizes differ: ", p.size(), " vs ", q.size()));
  }
  return TotalVariation(p.probs(), q.probs());
}

absl::StatusOr<double> TotalVariation(const JointPmf& p, const JointPmf& q) {
  if (absl::Status s = CheckSameAxes(p, q); !s.ok()) return s;
  return TotalVariation(p.probs(), q.probs());
}

absl::StatusOr<double> EntropyContinuityBound(double rho, int alphabet_size) {
  if (!(rho >= 0.0 && rho <= 0.25) || alphabet_size < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 0 <= rho <= 1/4, got ", rho));
  }
  if (rho == 0.0) return 0.0;
  return -2.0 * rho * std::log(2.0 * rho / alphabet_size);
}

}  // namespace htpl
