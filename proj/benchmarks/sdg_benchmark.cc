// Copyright 2026 The sdg Authors
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
#include <memory>
#include <vector>

#include "benchmark/benchmark.h"
#include "sdg/class_zoo.h"
#include "sdg/dimensions.h"
#include "sdg/game_solver.h"
#include "sdg/measures.h"
#include "sdg/online_learning.h"
#include "sdg/privacy.h"
#include "sdg/random.h"
#include "sdg/sequential_game.h"

namespace sdg {
namespace {

Distribution RandomDistribution(size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (double& x : w) x = -std::log(rng.UniformOpen());
  return Distribution::Create(std::move(w)).value();
}

void BM_LittlestoneDimension(benchmark::State& state) {
  const ConceptClass c =
      RandomClass(static_cast<size_t>(state.range(0)), 64, 7).value();
  for (auto _ : state) {
    benchmark::DoNotOptimize(LittlestoneDimension(c).value());
  }
}
BENCHMARK(BM_LittlestoneDimension)->Arg(8)->Arg(12)->Arg(16);

void BM_DualLittlestoneDimension(benchmark::State& state) {
  const ConceptClass c =
      Symmetrize(Thresholds(static_cast<size_t>(state.range(0))).value());
  for (auto _ : state) {
    benchmark::DoNotOptimize(DualLittlestoneDimension(c).value());
  }
}
BENCHMARK(BM_DualLittlestoneDimension)->Arg(7)->Arg(15)->Arg(31);

void BM_SolveZeroSum(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  Rng rng(3);
  std::vector<double> entries(n * n);
  for (double& e : entries) e = rng.Uniform() - 0.5;
  const PayoffMatrix m = PayoffMatrix::Create(n, n, entries).value();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveZeroSum(m).value());
  }
}
BENCHMARK(BM_SolveZeroSum)->Arg(8)->Arg(32)->Arg(64);

void BM_MwUpdate(benchmark::State& state) {
  const ConceptClass c =
      Symmetrize(Thresholds(static_cast<size_t>(state.range(0))).value());
  const size_t horizon = 1 << 20;
  auto learner = MakeMwLearner(c, horizon).value();
  Rng rng(5);
  for (auto _ : state) {
    if (learner->round() == horizon) {
      state.PauseTiming();
      learner = MakeMwLearner(c, horizon).value();
      state.ResumeTiming();
    }
    const DistExample ex =
        DistExample::Dirac(rng.UniformIndex(c.num_rows()), rng.Bernoulli(0.5));
    benchmark::DoNotOptimize(learner->Predict().value());
    benchmark::DoNotOptimize(learner->Update(ex));
  }
}
BENCHMARK(BM_MwUpdate)->Arg(15)->Arg(63)->Arg(255);

void BM_AgnosticSoaUpdate(benchmark::State& state) {
  const ConceptClass c = Symmetrize(Thresholds(7).value());
  const size_t horizon = static_cast<size_t>(state.range(0));
  Rng rng(5);
  for (auto _ : state) {
    auto learner = MakeAgnosticSoaLearner(c, horizon).value();
    for (size_t t = 0; t < horizon; ++t) {
      const DistExample ex = DistExample::Dirac(
          rng.UniformIndex(c.num_rows()), rng.Bernoulli(0.5));
      benchmark::DoNotOptimize(learner->Predict().value());
      benchmark::DoNotOptimize(learner->Update(ex));
    }
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_AgnosticSoaUpdate)->Arg(32)->Arg(128);

void BM_FoolingGame(benchmark::State& state) {
  const ConceptClass c = Symmetrize(Thresholds(7).value());
  const double eps = 0.2;
  const FoolingParams params = FoolingParams::Create(c, eps).value();
  const LearnerKind kind =
      state.range(0) == 0 ? LearnerKind::kMw : LearnerKind::kAgnosticSoa;
  Rng rng(11);
  for (auto _ : state) {
    const Distribution target = RandomDistribution(c.num_points(), rng);
    auto generator =
        MakeFoolingGenerator(c, params, kind, {.max_experts = 1e12}).value();
    HonestDiscriminator disc(c, target, eps);
    auto transcript = PlayGame(c, *generator, disc,
                               {.max_rounds = params.horizon,
                                .eps = eps,
                                .validation = Validation::kOff,
                                .bound = params.horizon});
    benchmark::DoNotOptimize(transcript.value());
  }
}
BENCHMARK(BM_FoolingGame)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExpMechLearner(benchmark::State& state) {
  const ConceptClass c = Symmetrize(Thresholds(63).value());
  Rng rng(13);
  LabeledSample s;
  for (int i = 0; i < state.range(0); ++i) {
    s.pairs.emplace_back(rng.UniformIndex(c.num_points()), rng.Bernoulli(0.5));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExpMechLearner(c, s, 1.0, rng).value());
  }
}
BENCHMARK(BM_ExpMechLearner)->Arg(100)->Arg(10000);

}  // namespace
}  // namespace sdg

BENCHMARK_MAIN();
