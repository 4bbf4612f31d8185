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

#include "htpl/regions/frontier.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "htpl/probcore/information.h"
#include "htpl/probcore/numeric.h"
#include "htpl/probcore/parallel.h"
#include "htpl/probcore/rng.h"

namespace htpl {
namespace {

// Law of (S, U, Y, Z) flattened as a (|S||Y||Z|) x |U| matrix, with Z of
// size 1 when absent.
struct TaciTables {
  int s = 0, u = 0, y = 0, z = 0;
  std::vector<double> syz_u;  // row-major [s][y][z][u]
  std::vector<double> p_u;
};

struct Coordinates {
  double rate = 0.0;
  double exponent = 0.0;
  double privacy0 = 0.0;
};

absl::StatusOr<TaciTables> BuildTables(const JointPmf& p) {
  std::vector<std::string> z;
  if (p.HasAxis("Z")) z.push_back("Z");
  absl::StatusOr<JointPmf> g =
      p.Grouped({{"S", {"S"}}, {"Y", {"Y"}}, {"Z", z}, {"U", {"U"}}});
  if (!g.ok()) return g.status();
  TaciTables t;
  t.s = g->axes()[0].size;
  t.y = g->axes()[1].size;
  t.z = g->axes()[2].size;
  t.u = g->axes()[3].size;
  t.syz_u.assign(g->probs().begin(), g->probs().end());
  t.p_u.assign(t.u, 0.0);
  for (size_t c = 0; c < t.syz_u.size(); ++c) t.p_u[c % t.u] += t.syz_u[c];
  return t;
}

// Flat channel rows, [u][w].
Coordinates Evaluate(const TaciTables& t, const std::vector<double>& w,
                     int w_size) {
  // P(s, y, z, w).
  const size_t syz = static_cast<size_t>(t.s) * t.y * t.z;
  std::vector<double> syzw(syz * w_size, 0.0);
  for (size_t r = 0; r < syz; ++r) {
    for (int u = 0; u < t.u; ++u) {
      const double p = t.syz_u[r * t.u + u];
      if (p == 0.0) continue;
      for (int k = 0; k < w_size; ++k) {
        syzw[r * w_size + k] += p * w[static_cast<size_t>(u) * w_size + k];
      }
    }
  }
  const size_t yz = static_cast<size_t>(t.y) * t.z;
  std::vector<double> yzw(yz * w_size, 0.0);
  std::vector<double> zw(static_cast<size_t>(t.z) * w_size, 0.0);
  std::vector<double> yz_m(yz, 0.0);
  std::vector<double> z_m(t.z, 0.0);
  for (size_t r = 0; r < syz; ++r) {
    const size_t yzi = r % yz;
    const size_t zi = r % t.z;
    for (int k = 0; k < w_size; ++k) {
      const double p = syzw[r * w_size + k];
      yzw[yzi * w_size + k] += p;
      zw[zi * w_size + k] += p;
      yz_m[yzi] += p;
      z_m[zi] += p;
    }
  }
  double h_w_given_u = 0.0;
  for (int u = 0; u < t.u; ++u) {
    h_w_given_u += t.p_u[u] * Entropy(absl::MakeConstSpan(w).subspan(
                                  static_cast<size_t>(u) * w_size, w_size));
  }
  const double h_zw = Entropy(zw);
  const double h_z = Entropy(z_m);
  const double h_yzw = Entropy(yzw);
  const double h_yz = Entropy(yz_m);
  const double h_syzw = Entropy(syzw);
  Coordinates c;
  const double h_w_given_z = h_zw - h_z;
  c.rate = std::max(0.0, h_w_given_z - h_w_given_u);
  c.exponent = std::max(0.0, h_w_given_z - (h_yzw - h_yz));
  c.privacy0 = std::max(0.0, h_syzw - h_yzw);
  return c;
}

struct Weights {
  double exponent, privacy, rate;
};

double Score(const Coordinates& c, const Weights& w) {
  return w.exponent * c.exponent + w.privacy * c.privacy0 - w.rate * c.rate;
}

// Coordinate search on the scalarized objective.
void Improve(const TaciTables& t, std::vector<double>& w, int w_size,
             const Weights& weights, const FrontierConfig& config) {
  if (w_size < 2) return;
  double best = Score(Evaluate(t, w, w_size), weights);
  for (double step = config.initial_step; step >= config.min_step;
       step *= config.step_shrink) {
    for (int sweep = 0; sweep < config.max_sweeps_per_step; ++sweep) {
      bool improved = false;
      for (int u = 0; u < t.u; ++u) {
        double* row = &w[static_cast<size_t>(u) * w_size];
        for (int from = 0; from < w_size; ++from) {
          for (int to = 0; to < w_size; ++to) {
            if (from == to || row[from] <= 0.0) continue;
            const double moved = std::min(step, row[from]);
            row[from] -= moved;
            row[to] += moved;
            const double score = Score(Evaluate(t, w, w_size), weights);
            if (score > best + 1e-15) {
              best = score;
              improved = true;
            } else {
              row[from] += moved;
              row[to] -= moved;
            }
          }
        }
      }
      if (!improved) break;
    }
  }
}

std::vector<std::vector<double>> DeterministicMaps(int u_size, int w_size,
                                                   int limit) {
  std::vector<std::vector<double>> maps;
  double count = std::pow(static_cast<double>(w_size), u_size);
  if (count > limit) return maps;
  std::vector<int> digits(u_size, 0);
  while (true) {
    std::vector<double> w(static_cast<size_t>(u_size) * w_size, 0.0);
    for (int u = 0; u < u_size; ++u)
      w[static_cast<size_t>(u) * w_size + digits[u]] = 1.0;
    maps.push_back(std::move(w));
    int i = u_size - 1;
    while (i >= 0 && ++digits[i] == w_size) digits[i--] = 0;
    if (i < 0) break;
  }
  return maps;
}

std::vector<double> RandomChannel(int u_size, int w_size, CounterRng& rng) {
  std::vector<double> w(static_cast<size_t>(u_size) * w_size);
  for (int u = 0; u < u_size; ++u) {
    double total = 0.0;
    for (int k = 0; k < w_size; ++k) {
      total += w[static_cast<size_t>(u) * w_size + k] = rng.Exponential();
    }
    for (int k = 0; k < w_size; ++k)
      w[static_cast<size_t>(u) * w_size + k] /= total;
  }
  return w;
}

}  // namespace

bool Dominates(const TradeoffPoint& a, const TradeoffPoint& b, double tol) {
  const bool no_worse = a.rate <= b.rate + tol &&
                        a.exponent >= b.exponent - tol &&
                        a.privacy0 >= b.privacy0 - tol;
  const bool better = a.rate < b.rate - tol || a.exponent > b.exponent + tol ||
                      a.privacy0 > b.privacy0 + tol;
  return no_worse && better;
}

std::vector<FrontierPoint> ParetoFilter(std::vector<FrontierPoint> points,
                                        double tol) {
  std::stable_sort(points.begin(), points.end(),
                   [](const FrontierPoint& a, const FrontierPoint& b) {
                     if (a.point.rate != b.point.rate) {
                       return a.point.rate < b.point.rate;
                     }
                     return a.point.exponent > b.point.exponent;
                   });
  std::vector<FrontierPoint> kept;
  for (FrontierPoint& candidate : points) {
    bool dominated = false;
    for (const FrontierPoint& k : kept) {
      const bool duplicate =
          std::abs(k.point.rate - candidate.point.rate) <= tol &&
          std::abs(k.point.exponent - candidate.point.exponent) <= tol &&
          std::abs(k.point.privacy0 - candidate.point.privacy0) <= tol;
      if (duplicate || Dominates(k.point, candidate.point, tol)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(kept, [&](const FrontierPoint& k) {
      return Dominates(candidate.point, k.point, tol);
    });
    kept.push_back(std::move(candidate));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const FrontierPoint& a, const FrontierPoint& b) {
                     return a.point.rate < b.point.rate;
                   });
  return kept;
}

std::optional<EnvelopeValue> FrontierEnvelopeAt(
    const std::vector<FrontierPoint>& points, double rate) {
  std::optional<EnvelopeValue> best;
  auto offer = [&](double exponent, double privacy0) {
    if (!best.has_value() || exponent > best->exponent) {
      best = EnvelopeValue{exponent, privacy0};
    }
  };
  for (const FrontierPoint& a : points) {
    if (std::abs(a.point.rate - rate) <= 1e-15) {
      offer(a.point.exponent, a.point.privacy0);
    }
    if (a.point.rate > rate) continue;
    for (const FrontierPoint& b : points) {
      if (b.point.rate <= rate || b.point.rate <= a.point.rate) continue;
      const double t = (rate - a.point.rate) / (b.point.rate - a.point.rate);
      offer((1 - t) * a.point.exponent + t * b.point.exponent,
            (1 - t) * a.point.privacy0 + t * b.point.privacy0);
    }
  }
  return best;
}

absl::StatusOr<std::vector<FrontierPoint>> TaciFrontier(
    const HypothesisPair& pair, const FrontierConfig& config) {
  const JointPmf& p = pair.p();
  if (!p.HasAxis("Y")) {
    return absl::InvalidArgumentError(
        "frontier search needs side information axis 'Y'");
  }
  for (const std::string& axis : pair.side_axes()) {
    if (axis != "Y" && axis != "Z") {
      return absl::InvalidArgumentError(
          absl::StrCat("unexpected side axis '", axis, "'"));
    }
  }
  if (config.min_step <= 0.0 || config.step_shrink <= 0.0 ||
      config.step_shrink >= 1.0) {
    return absl::InvalidArgumentError("invalid local search step schedule");
  }
  absl::StatusOr<TaciTables> tables = BuildTables(p);
  if (!tables.ok()) return tables.status();
  std::vector<std::string> uyz = {"U", "Y"};
  if (p.HasAxis("Z")) uyz.push_back("Z");
  absl::StatusOr<double> lambda_min = ConditionalEntropy(pair.q(), {"S"}, uyz);
  if (!lambda_min.ok()) return lambda_min.status();

  const int u_size = tables->u;
  const int max_w =
      std::min(config.max_w_size.value_or(u_size + 2), u_size + 2);

  struct Seed {
    int w_size;
    std::vector<double> w;
    Weights weights;
  };
  std::vector<Seed> seeds;
  CounterRng rng(config.seed, 0);
  for (int w_size = std::max(1, config.min_w_size); w_size <= max_w; ++w_size) {
    if (config.include_deterministic) {
      for (std::vector<double>& w :
           DeterministicMaps(u_size, w_size, config.max_deterministic_maps)) {
        seeds.push_back(Seed{w_size, std::move(w), Weights{0, 0, 0}});
      }
    }
    for (int i = 0; i < config.random_channels_per_size; ++i) {
      std::vector<double> w = RandomChannel(u_size, w_size, rng);
      const double a = rng.Exponential();
      const double b = rng.Exponential();
      const double c = rng.Exponential();
      seeds.push_back(
          Seed{w_size, std::move(w),
               Weights{a / (a + b + c), b / (a + b + c), c / (a + b + c)}});
    }
  }

  std::vector<absl::StatusOr<FrontierPoint>> results(
      seeds.size(), absl::UnknownError("not evaluated"));
  ParallelFor(seeds.size(), [&](size_t i) {
    Seed seed = seeds[i];
    const bool random =
        seed.weights.exponent + seed.weights.privacy + seed.weights.rate > 0.0;
    if (random) Improve(*tables, seed.w, seed.w_size, seed.weights, config);
    std::vector<std::vector<double>> rows(u_size);
    for (int u = 0; u < u_size; ++u) {
      for (int k = 0; k < seed.w_size; ++k) {
        // Clean up rounding from repeated mass transfers.
        rows[u].push_back(
            std::max(0.0, seed.w[static_cast<size_t>(u) * seed.w_size + k]));
      }
      double total = 0.0;
      for (double v : rows[u]) total += v;
      for (double& v : rows[u]) v /= total;
    }
    absl::StatusOr<Channel> channel = Channel::Create(rows);
    if (!channel.ok()) {
      results[i] = channel.status();
      return;
    }
    absl::StatusOr<TaciCoordinates> c = TaciPoint(p, *channel);
    if (!c.ok()) {
      results[i] = c.status();
      return;
    }
    TradeoffPoint point;
    point.rate = c->rate_needed;
    point.rate_needed = c->rate_needed;
    point.exponent = c->exponent;
    point.privacy0 = c->equivocation0;
    point.privacy1 = *lambda_min;
    point.privacy_kind = PrivacyKind::kEquivocation;
    results[i] = FrontierPoint{point, *std::move(channel), static_cast<int>(i)};
  });

  std::vector<FrontierPoint> points;
  for (absl::StatusOr<FrontierPoint>& r : results) {
    if (!r.ok()) return r.status();
    points.push_back(*std::move(r));
  }
  return ParetoFilter(std::move(points));
}

}  // namespace htpl
