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

#include "htpl/regions/coupling.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/numeric.h"

namespace htpl {
namespace {

struct PreparedConstraint {
  std::vector<size_t> projection;
  std::vector<double> target;
};

struct EntropyProjection {
  std::vector<size_t> joint;  // cell -> (target, given) index
  std::vector<size_t> given;  // cell -> given index
  size_t joint_cells = 0;
  size_t given_cells = 0;
  double floor = 0.0;
};

absl::StatusOr<std::vector<PreparedConstraint>> Prepare(
    const CouplingProblem& problem) {
  const JointPmf& ref = problem.reference;
  std::vector<PreparedConstraint> prepared;
  for (const MarginalConstraint& c : problem.marginals) {
    if (c.target.AxisNames() != c.axes) {
      return absl::InvalidArgumentError(absl::StrCat(
          "constraint target axes (", absl::StrJoin(c.target.AxisNames(), ","),
          ") differ from constraint axes (", absl::StrJoin(c.axes, ","), ")"));
    }
    for (const Axis& a : c.target.axes()) {
      absl::StatusOr<int> size = ref.AxisSize(a.name);
      if (!size.ok()) return size.status();
      if (*size != a.size) {
        return absl::InvalidArgumentError(
            absl::StrCat("constraint axis '", a.name, "' has size ", a.size,
                         ", reference has ", *size));
      }
    }
    absl::StatusOr<std::vector<size_t>> projection =
        ref.ProjectionIndex(c.axes);
    if (!projection.ok()) return projection.status();
    prepared.push_back(PreparedConstraint{
        *std::move(projection),
        std::vector<double>(c.target.probs().begin(), c.target.probs().end())});
  }
  return prepared;
}

absl::Status CheckConsistency(const CouplingProblem& problem) {
  const auto& cs = problem.marginals;
  for (size_t i = 0; i < cs.size(); ++i) {
    for (size_t j = i + 1; j < cs.size(); ++j) {
      std::vector<std::string> shared;
      for (const std::string& a : cs[i].axes) {
        if (std::find(cs[j].axes.begin(), cs[j].axes.end(), a) !=
            cs[j].axes.end()) {
          shared.push_back(a);
        }
      }
      if (shared.empty()) continue;
      absl::StatusOr<JointPmf> mi = cs[i].target.Marginal(shared);
      absl::StatusOr<JointPmf> mj = cs[j].target.Marginal(shared);
      if (!mi.ok()) return mi.status();
      if (!mj.ok()) return mj.status();
      if (!ProbsEqual(mi->probs(), mj->probs(), 1e-9)) {
        return absl::FailedPreconditionError(
            absl::StrCat("infeasible constraints: targets ", i, " and ", j,
                         " disagree on axes ", absl::StrJoin(shared, ",")));
      }
    }
  }
  return absl::OkStatus();
}

// Edmonds-Karp on a small dense graph.
double MaxFlow(std::vector<std::vector<double>> capacity, int source,
               int sink) {
  const int nodes = static_cast<int>(capacity.size());
  double flow = 0.0;
  while (true) {
    std::vector<int> parent(nodes, -1);
    parent[source] = source;
    std::deque<int> queue = {source};
    while (!queue.empty() && parent[sink] < 0) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < nodes; ++v) {
        if (parent[v] < 0 && capacity[u][v] > 1e-15) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[sink] < 0) break;
    double bottleneck = kInfinity;
    for (int v = sink; v != source; v = parent[v]) {
      bottleneck = std::min(bottleneck, capacity[parent[v]][v]);
    }
    for (int v = sink; v != source; v = parent[v]) {
      capacity[parent[v]][v] -= bottleneck;
      capacity[v][parent[v]] += bottleneck;
    }
    flow += bottleneck;
  }
  return flow;
}

bool SingleConstraintFeasible(const JointPmf& ref,
                              const PreparedConstraint& c) {
  std::vector<bool> reachable(c.target.size(), false);
  for (size_t x = 0; x < ref.num_cells(); ++x) {
    if (ref[x] > 0.0) reachable[c.projection[x]] = true;
  }
  for (size_t a = 0; a < c.target.size(); ++a) {
    if (c.target[a] > 0.0 && !reachable[a]) return false;
  }
  return true;
}

bool PairFeasible(const JointPmf& ref, const PreparedConstraint& c1,
                  const PreparedConstraint& c2) {
  const int left = static_cast<int>(c1.target.size());
  const int right = static_cast<int>(c2.target.size());
  const int source = left + right;
  const int sink = source + 1;
  std::vector<std::vector<double>> capacity(sink + 1,
                                            std::vector<double>(sink + 1, 0.0));
  for (int a = 0; a < left; ++a) capacity[source][a] = c1.target[a];
  for (int b = 0; b < right; ++b) capacity[left + b][sink] = c2.target[b];
  for (size_t x = 0; x < ref.num_cells(); ++x) {
    if (ref[x] > 0.0) {
      capacity[c1.projection[x]][left + c2.projection[x]] = 2.0;
    }
  }
  return MaxFlow(std::move(capacity), source, sink) >= 1.0 - 1e-10;
}

bool Feasible(const JointPmf& ref,
              const std::vector<PreparedConstraint>& constraints) {
  for (const PreparedConstraint& c : constraints) {
    if (!SingleConstraintFeasible(ref, c)) return false;
  }
  if (constraints.size() == 2) {
    return PairFeasible(ref, constraints[0], constraints[1]);
  }
  return true;
}

double MaxResidual(const std::vector<double>& p,
                   const std::vector<PreparedConstraint>& constraints) {
  double worst = 0.0;
  for (const PreparedConstraint& c : constraints) {
    std::vector<double> marginal(c.target.size(), 0.0);
    for (size_t x = 0; x < p.size(); ++x) marginal[c.projection[x]] += p[x];
    for (size_t a = 0; a < marginal.size(); ++a) {
      worst = std::max(worst, std::abs(marginal[a] - c.target[a]));
    }
  }
  if (constraints.empty()) {
    worst = std::abs(CompensatedTotal(p) - 1.0);
  }
  return worst;
}

// Iterative proportional fitting from `p`: the I-projection of `p` onto the
// linear family defined by the constraints. Returns the final residual.
double Project(std::vector<double>& p,
               const std::vector<PreparedConstraint>& constraints,
               const CouplingOptions& options, int* sweeps) {
  if (constraints.empty()) {
    const double total = CompensatedTotal(p);
    for (double& v : p) v /= total;
    return 0.0;
  }
  double residual = kInfinity;
  for (int sweep = 0; sweep < options.max_projection_sweeps; ++sweep) {
    for (const PreparedConstraint& c : constraints) {
      std::vector<double> marginal(c.target.size(), 0.0);
      for (size_t x = 0; x < p.size(); ++x) marginal[c.projection[x]] += p[x];
      for (size_t x = 0; x < p.size(); ++x) {
        const double m = marginal[c.projection[x]];
        p[x] = m > 0.0 ? p[x] * (c.target[c.projection[x]] / m) : 0.0;
      }
    }
    ++*sweeps;
    residual = MaxResidual(p, constraints);
    if (residual <= options.residual_tolerance) break;
  }
  return residual;
}

double ConditionalEntropyOf(const std::vector<double>& p,
                            const EntropyProjection& e) {
  std::vector<double> joint(e.joint_cells, 0.0);
  std::vector<double> given(e.given_cells, 0.0);
  for (size_t x = 0; x < p.size(); ++x) {
    joint[e.joint[x]] += p[x];
    given[e.given[x]] += p[x];
  }
  return std::max(0.0, Entropy(joint) - Entropy(given));
}

struct DescentState {
  std::vector<double> p;
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

// Mirror descent on D(p || r) - mu H(T | G) over the linear family, with
// multiplicative steps p <- Proj(p^(1 - tau) (r cond^-mu)^tau).
DescentState Descend(std::vector<double> p, const std::vector<double>& log_r,
                     const std::vector<PreparedConstraint>& constraints,
                     const EntropyProjection* entropy, double mu, double tau,
                     const CouplingOptions& options) {
  DescentState state;
  int sweeps = 0;
  for (int it = 0; it < options.max_descent_iterations; ++it) {
    std::vector<double> cond;
    if (entropy != nullptr && mu > 0.0) {
      std::vector<double> joint(entropy->joint_cells, 0.0);
      std::vector<double> given(entropy->given_cells, 0.0);
      for (size_t x = 0; x < p.size(); ++x) {
        joint[entropy->joint[x]] += p[x];
        given[entropy->given[x]] += p[x];
      }
      cond.resize(p.size());
      for (size_t x = 0; x < p.size(); ++x) {
        cond[x] = joint[entropy->joint[x]] / given[entropy->given[x]];
      }
    }
    std::vector<double> next(p.size(), 0.0);
    double max_log = -kInfinity;
    std::vector<double> log_next(p.size(), -kInfinity);
    for (size_t x = 0; x < p.size(); ++x) {
      if (p[x] <= 0.0 || std::isinf(log_r[x])) continue;
      double target = log_r[x];
      if (!cond.empty()) target -= mu * std::log(cond[x]);
      log_next[x] = (1.0 - tau) * std::log(p[x]) + tau * target;
      max_log = std::max(max_log, log_next[x]);
    }
    for (size_t x = 0; x < p.size(); ++x) {
      if (std::isfinite(log_next[x])) next[x] = std::exp(log_next[x] - max_log);
    }
    state.residual = Project(next, constraints, options, &sweeps);
    double change = 0.0;
    for (size_t x = 0; x < p.size(); ++x) {
      change = std::max(change, std::abs(next[x] - p[x]));
    }
    p = std::move(next);
    state.iterations = it + 1;
    if (change <= 1e-12 || (tau == 1.0 && cond.empty())) break;
    if (it + 1 == options.max_descent_iterations) state.converged = false;
  }
  state.p = std::move(p);
  return state;
}

}  // namespace

absl::StatusOr<bool> SupportFeasible(const CouplingProblem& problem) {
  absl::StatusOr<std::vector<PreparedConstraint>> constraints =
      Prepare(problem);
  if (!constraints.ok()) return constraints.status();
  if (absl::Status s = CheckConsistency(problem); !s.ok()) return s;
  return Feasible(problem.reference, *constraints);
}

absl::StatusOr<CouplingResult> SolveCoupling(const CouplingProblem& problem,
                                             const CouplingOptions& options) {
  if (!(options.step > 0.0 && options.step <= 1.0)) {
    return absl::InvalidArgumentError("step must lie in (0, 1]");
  }
  const JointPmf& ref = problem.reference;
  absl::StatusOr<std::vector<PreparedConstraint>> constraints =
      Prepare(problem);
  if (!constraints.ok()) return constraints.status();
  if (absl::Status s = CheckConsistency(problem); !s.ok()) return s;

  CouplingResult result;
  if (!Feasible(ref, *constraints)) {
    result.divergence = kInfinity;
    return result;
  }

  std::optional<EntropyProjection> entropy;
  if (problem.entropy_floor.has_value()) {
    const ConditionalEntropyFloor& f = *problem.entropy_floor;
    std::vector<std::string> joint_axes = f.target;
    joint_axes.insert(joint_axes.end(), f.given.begin(), f.given.end());
    absl::StatusOr<std::vector<size_t>> joint = ref.ProjectionIndex(joint_axes);
    if (!joint.ok()) return joint.status();
    absl::StatusOr<std::vector<size_t>> given = ref.ProjectionIndex(f.given);
    if (!given.ok()) return given.status();
    EntropyProjection e;
    e.joint = *std::move(joint);
    e.given = *std::move(given);
    e.joint_cells = *std::max_element(e.joint.begin(), e.joint.end()) + 1;
    e.given_cells = *std::max_element(e.given.begin(), e.given.end()) + 1;
    e.floor = f.min_nats;
    entropy = std::move(e);
  }

  std::vector<double> log_r(ref.num_cells());
  for (size_t x = 0; x < ref.num_cells(); ++x) {
    log_r[x] = ref[x] > 0.0 ? std::log(ref[x]) : -kInfinity;
  }
  std::vector<double> start(ref.probs().begin(), ref.probs().end());
  if (options.start.has_value()) {
    if (options.start->size() != ref.num_cells()) {
      return absl::InvalidArgumentError("start point has the wrong size");
    }
    for (size_t x = 0; x < ref.num_cells(); ++x) {
      const double s = (*options.start)[x];
      if (ref[x] > 0.0 && !(s > 0.0 && std::isfinite(s))) {
        return absl::InvalidArgumentError(
            "start point must be positive on the reference support");
      }
      start[x] = ref[x] > 0.0 ? s : 0.0;
    }
    int sweeps = 0;
    Project(start, *constraints, options, &sweeps);
  }

  DescentState state =
      Descend(start, log_r, *constraints, nullptr, 0.0, options.step, options);
  int iterations = state.iterations;
  bool converged = state.converged;

  if (entropy.has_value() && ConditionalEntropyOf(state.p, *entropy) <
                                 entropy->floor - options.entropy_tolerance) {
    // Bisection on the multiplier of the entropy floor. The constrained
    // entropy of the penalized minimizer increases with mu.
    auto solve = [&](double mu, const std::vector<double>& warm) {
      DescentState s = Descend(warm, log_r, *constraints, &*entropy, mu,
                               1.0 / (1.0 + mu), options);
      iterations += s.iterations;
      converged = converged && s.converged;
      return s;
    };
    constexpr double kMaxMultiplier = 1e4;
    double lo = 0.0;
    double hi = 1.0;
    DescentState high = solve(hi, state.p);
    while (ConditionalEntropyOf(high.p, *entropy) < entropy->floor) {
      lo = hi;
      hi *= 2.0;
      if (hi > kMaxMultiplier) {
        result.divergence = kInfinity;
        result.iterations = iterations;
        result.converged = false;
        return result;
      }
      high = solve(hi, high.p);
    }
    for (int round = 0; round < 200; ++round) {
      const double slack =
          ConditionalEntropyOf(high.p, *entropy) - entropy->floor;
      if (slack <= options.entropy_tolerance || hi - lo <= 1e-13 * hi) break;
      const double mid = 0.5 * (lo + hi);
      DescentState trial = solve(mid, high.p);
      if (ConditionalEntropyOf(trial.p, *entropy) >= entropy->floor) {
        hi = mid;
        high = std::move(trial);
      } else {
        lo = mid;
      }
    }
    state = std::move(high);
  }

  result.iterations = iterations;
  result.max_residual = MaxResidual(state.p, *constraints);
  if (result.max_residual > 1e-6) {
    // The linear family has no point inside the reference support that the
    // projection could reach.
    result.divergence = kInfinity;
    result.converged = false;
    return result;
  }
  result.converged = converged && result.max_residual <= 1e-9;
  absl::StatusOr<JointPmf> coupling = ref.WithProbs(state.p);
  if (!coupling.ok()) return coupling.status();
  result.max_residual = MaxResidual(
      std::vector<double>(coupling->probs().begin(), coupling->probs().end()),
      *constraints);
  absl::StatusOr<double> divergence = KlDivergence(*coupling, ref);
  if (!divergence.ok()) return divergence.status();
  result.divergence = *divergence;
  if (entropy.has_value()) {
    result.entropy_slack =
        ConditionalEntropyOf(std::vector<double>(coupling->probs().begin(),
                                                 coupling->probs().end()),
                             *entropy) -
        entropy->floor;
  }
  result.coupling = *std::move(coupling);
  return result;
}

}  // namespace htpl
