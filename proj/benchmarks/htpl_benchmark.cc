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

#include <vector>

#include "benchmark/benchmark.h"
#include "htpl/adversary/privacy.h"
#include "htpl/adversary/scheme_model.h"
#include "htpl/regions/binary_family.h"
#include "htpl/regions/exponents.h"
#include "htpl/regions/frontier.h"
#include "htpl/schemes/trials.h"

namespace htpl {
namespace {

HypothesisPair Family() { return *BinaryFamilyInstance(0.25, 0.1); }

void BM_ExponentE1(benchmark::State& state) {
  const HypothesisPair pair = Family();
  const Channel w = *BinarySymmetricChannel(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(ExponentE1(pair, w));
}
BENCHMARK(BM_ExponentE1);

void BM_KappaStar(benchmark::State& state) {
  const HypothesisPair pair = Family();
  const Channel w = *BinarySymmetricChannel(0.2);
  for (auto _ : state) benchmark::DoNotOptimize(KappaStar(0.3, pair, w));
}
BENCHMARK(BM_KappaStar);

void BM_Frontier(benchmark::State& state) {
  const HypothesisPair pair = Family();
  FrontierConfig config;
  config.min_w_size = 2;
  config.max_w_size = 2;
  config.random_channels_per_size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(TaciFrontier(pair, config));
}
BENCHMARK(BM_Frontier)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RunTrials(benchmark::State& state) {
  const HypothesisPair pair = Family();
  SchemeConfig config;
  config.scheme = static_cast<SchemeKind>(state.range(0));
  config.n = 8;
  config.delta = 0.1;
  config.rate_nats = 0.4;
  config.epsilon_star = 0.25;
  config.w_channel = *BinarySymmetricChannel(0.2);
  config.trials = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(RunTrials(config, pair));
  state.SetItemsProcessed(state.iterations() * 2 * config.trials);
}
BENCHMARK(BM_RunTrials)
    ->Arg(static_cast<int>(SchemeKind::kZeroRate))
    ->Arg(static_cast<int>(SchemeKind::kTimeshare))
    ->Arg(static_cast<int>(SchemeKind::kLikelihood))
    ->Unit(benchmark::kMillisecond);

void BM_ExactEquivocation(benchmark::State& state) {
  const HypothesisPair pair = Family();
  const Channel w = *BinarySymmetricChannel(0.2);
  const SchemeModel model =
      *PerLetterChannelModel(w, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExactEquivocation(model, pair, Hypothesis::kNull));
  }
}
BENCHMARK(BM_ExactEquivocation)
    ->DenseRange(2, 6, 2)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace htpl

BENCHMARK_MAIN();
