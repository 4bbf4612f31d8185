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

#include "htpl/oracle/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace htpl::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> Digits(int64_t index, int n, int base) {
  std::vector<int> out(n);
  for (int i = n - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % base);
    index /= base;
  }
  return out;
}

int64_t Power(int64_t base, int n) {
  int64_t out = 1;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

// One fully specified outcome of a block.
struct Outcome {
  std::vector<int> s;
  std::vector<int> v;
  int64_t message = 0;
  double p = 0.0;
};

absl::StatusOr<std::vector<Outcome>> Enumerate(const SchemeModel& model,
                                               const HypothesisPair& pair,
                                               Hypothesis h,
                                               const OracleBudget& budget) {
  const int n = model.n();
  const int ss = pair.s_size();
  const int us = pair.u_size();
  const int vs = pair.v_size();
  if (model.u_size() != us) {
    return absl::InvalidArgumentError("model does not match |U|");
  }
  const double cells = std::pow(static_cast<double>(ss) * us * vs, n) *
                       static_cast<double>(model.num_messages());
  if (cells > static_cast<double>(budget.max_joint_cells)) {
    return absl::ResourceExhaustedError(absl::StrCat("oracle enumeration of ",
                                                     cells, " cells exceeds ",
                                                     budget.max_joint_cells));
  }
  const JointPmf& law = pair.law_suv(h);
  std::vector<Outcome> out;
  const int64_t s_count = Power(ss, n);
  const int64_t u_count = Power(us, n);
  const int64_t v_count = Power(vs, n);
  for (int64_t si = 0; si < s_count; ++si) {
    const std::vector<int> s = Digits(si, n, ss);
    for (int64_t ui = 0; ui < u_count; ++ui) {
      const std::vector<int> u = Digits(ui, n, us);
      for (int64_t vi = 0; vi < v_count; ++vi) {
        const std::vector<int> v = Digits(vi, n, vs);
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= law.At({s[i], u[i], v[i]});
        if (p == 0.0) continue;
        for (const MessageProb& e : model.Row(ui)) {
          out.push_back(Outcome{s, v, e.message, p * e.prob});
        }
      }
    }
  }
  return out;
}

// Cell-to-constraint-row incidence for the marginal constraints.
struct LinearSystem {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

absl::StatusOr<LinearSystem> BuildSystem(const CouplingProblem& problem) {
  const JointPmf& ref = problem.reference;
  LinearSystem sys;
  std::vector<double> ones(ref.num_cells(), 1.0);
  sys.a.push_back(ones);
  sys.b.push_back(1.0);
  for (const MarginalConstraint& c : problem.marginals) {
    std::vector<int> positions;
    for (const std::string& name : c.axes) {
      int found = -1;
      for (int k = 0; k < ref.rank(); ++k) {
        if (ref.axes()[k].name == name) found = k;
      }
      if (found < 0) {
        return absl::InvalidArgumentError(absl::StrCat("unknown axis ", name));
      }
      positions.push_back(found);
    }
    std::vector<std::vector<double>> rows(c.target.num_cells(),
                                          std::vector<double>(ref.num_cells()));
    for (size_t cell = 0; cell < ref.num_cells(); ++cell) {
      const std::vector<int> idx = ref.MultiIndex(cell);
      size_t t = 0;
      for (size_t k = 0; k < positions.size(); ++k) {
        t = t * c.target.axes()[k].size + idx[positions[k]];
      }
      rows[t][cell] = 1.0;
    }
    for (size_t t = 0; t < rows.size(); ++t) {
      sys.a.push_back(rows[t]);
      sys.b.push_back(c.target[t]);
    }
  }
  return sys;
}

double NaiveKl(const std::vector<double>& x, const JointPmf& ref) {
  double total = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) continue;
    if (ref[i] <= 0.0) return kInf;
    total += x[i] * std::log(x[i] / ref[i]);
  }
  return total;
}

double NaiveConditionalEntropy(const std::vector<double>& x,
                               const JointPmf& ref,
                               const ConditionalEntropyFloor& floor) {
  // H(target, given) - H(given) by explicit grouping.
  std::map<std::vector<int>, double> joint;
  std::map<std::vector<int>, double> given;
  for (size_t cell = 0; cell < x.size(); ++cell) {
    const std::vector<int> idx = ref.MultiIndex(cell);
    std::vector<int> key_joint, key_given;
    for (const std::string& name : floor.given) {
      for (int k = 0; k < ref.rank(); ++k) {
        if (ref.axes()[k].name == name) key_given.push_back(idx[k]);
      }
    }
    key_joint = key_given;
    for (const std::string& name : floor.target) {
      for (int k = 0; k < ref.rank(); ++k) {
        if (ref.axes()[k].name == name) key_joint.push_back(idx[k]);
      }
    }
    joint[key_joint] += x[cell];
    given[key_given] += x[cell];
  }
  double h = 0.0;
  for (const auto& [k, p] : joint) {
    if (p > 0.0) h -= p * std::log(p);
  }
  for (const auto& [k, p] : given) {
    if (p > 0.0) h += p * std::log(p);
  }
  return h;
}

}  // namespace

absl::StatusOr<ErrorProbabilities> ExactErrorProbabilities(
    const SchemeModel& model, const AcceptanceRegion& accept,
    const HypothesisPair& pair, const OracleBudget& budget) {
  ErrorProbabilities out;
  for (Hypothesis h : {Hypothesis::kNull, Hypothesis::kAlternate}) {
    absl::StatusOr<std::vector<Outcome>> outcomes =
        Enumerate(model, pair, h, budget);
    if (!outcomes.ok()) return outcomes.status();
    double accepted = 0.0;
    double rejected = 0.0;
    for (const Outcome& o : *outcomes) {
      absl::StatusOr<SequenceSample> v =
          SequenceSample::Create(o.v, pair.v_size());
      if (!v.ok()) return v.status();
      if (accept(model.message(o.message), *v)) {
        accepted += o.p;
      } else {
        rejected += o.p;
      }
    }
    if (h == Hypothesis::kNull) {
      out.alpha = rejected;
    } else {
      out.beta = accepted;
    }
  }
  return out;
}

absl::StatusOr<double> GridMinKl(const CouplingProblem& problem,
                                 const OracleBudget& budget) {
  const JointPmf& ref = problem.reference;
  const int cells = static_cast<int>(ref.num_cells());
  if (cells > 8) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid oracle supports at most 8 cells, got ", cells));
  }
  if (budget.grid_steps < 1) {
    return absl::InvalidArgumentError("grid_steps must be positive");
  }
  absl::StatusOr<LinearSystem> sys = BuildSystem(problem);
  if (!sys.ok()) return sys.status();

  // Reduced row echelon form with partial pivoting.
  std::vector<std::vector<double>> a = sys->a;
  std::vector<double> b = sys->b;
  const int rows = static_cast<int>(a.size());
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < cells && r < rows; ++c) {
    int best = r;
    for (int i = r; i < rows; ++i) {
      if (std::abs(a[i][c]) > std::abs(a[best][c])) best = i;
    }
    if (std::abs(a[best][c]) < 1e-12) continue;
    std::swap(a[r], a[best]);
    std::swap(b[r], b[best]);
    const double pv = a[r][c];
    for (int k = 0; k < cells; ++k) a[r][k] /= pv;
    b[r] /= pv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0.0) continue;
      const double f = a[i][c];
      for (int k = 0; k < cells; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i) {
    if (std::abs(b[i]) > 1e-9) return kInf;  // inconsistent targets
  }
  std::vector<int> free_cols;
  for (int c = 0; c < cells; ++c) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), c) ==
        pivot_cols.end()) {
      free_cols.push_back(c);
    }
  }
  if (free_cols.size() > 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid oracle supports at most 3 free coordinates, got ",
                     free_cols.size()));
  }

  const int steps = budget.grid_steps;
  int64_t points = 1;
  for (size_t k = 0; k < free_cols.size(); ++k) points *= steps + 1;
  double best = kInf;
  std::vector<double> x(cells);
  for (int64_t g = 0; g < points; ++g) {
    std::fill(x.begin(), x.end(), 0.0);
    int64_t rest = g;
    for (int col : free_cols) {
      x[col] = static_cast<double>(rest % (steps + 1)) / steps;
      rest /= steps + 1;
    }
    bool ok = true;
    for (size_t i = 0; i < pivot_cols.size() && ok; ++i) {
      double value = b[i];
      for (int col : free_cols) value -= a[i][col] * x[col];
      if (value < -1e-12) ok = false;
      x[pivot_cols[i]] = std::max(0.0, value);
    }
    if (!ok) continue;
    if (problem.entropy_floor.has_value() &&
        NaiveConditionalEntropy(x, ref, *problem.entropy_floor) <
            problem.entropy_floor->min_nats - 1e-12) {
      continue;
    }
    best = std::min(best, NaiveKl(x, ref));
  }
  return best;
}

absl::StatusOr<double> ExhaustiveCausalEstimators(const SchemeModel& model,
                                                  const HypothesisPair& pair,
                                                  Hypothesis h,
                                                  const OracleBudget& budget) {
  const int n = model.n();
  if (n > 2)
    return absl::InvalidArgumentError("exhaustive search needs n <= 2");
  if (!pair.distortion().has_value()) {
    return absl::FailedPreconditionError("pair carries no distortion table");
  }
  const Distortion& d = *pair.distortion();
  absl::StatusOr<std::vector<Outcome>> outcomes =
      Enumerate(model, pair, h, budget);
  if (!outcomes.ok()) return outcomes.status();
  const int ss = pair.s_size();
  const int vs = pair.v_size();
  const int64_t v_count = Power(vs, n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int64_t prefix_count = Power(ss, i);
    for (int64_t m = 0; m < model.num_messages(); ++m) {
      for (int64_t vi = 0; vi < v_count; ++vi) {
        const std::vector<int> v = Digits(vi, n, vs);
        for (int64_t pi = 0; pi < prefix_count; ++pi) {
          const std::vector<int> prefix = Digits(pi, i, ss);
          // Try every value of this table entry.
          double entry_best = kInf;
          for (int t = 0; t < d.estimate_size(); ++t) {
            double risk = 0.0;
            for (const Outcome& o : *outcomes) {
              if (o.message != m || o.v != v) continue;
              if (!std::equal(prefix.begin(), prefix.end(), o.s.begin())) {
                continue;
              }
              risk += o.p * d(o.s[i], t);
            }
            entry_best = std::min(entry_best, risk);
          }
          total += entry_best;
        }
      }
    }
  }
  return total;
}

}  // namespace htpl::oracle
