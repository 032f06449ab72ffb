// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "sensel/certificates.hpp"
#include "sensel/selection.hpp"

namespace {

using namespace sensel;

void BM_sym_eig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  const Matrix a = symmetrized(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym_eig(a));
  }
}
BENCHMARK(BM_sym_eig)->Arg(16)->Arg(64)->Arg(128);

void BM_spd_inverse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  const Matrix a = symmetrized(g * g.transpose() + Matrix::identity(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spd_inverse(a));
  }
}
BENCHMARK(BM_spd_inverse)->Arg(32)->Arg(128)->Arg(256);

void BM_lambda_max_psd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  const Matrix a = symmetrized(g * g.transpose());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda_max_psd(a));
  }
}
BENCHMARK(BM_lambda_max_psd)->Arg(64)->Arg(256);

void BM_greedy_filtering(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearSystem sys =
      random_system(n, n, 0.9, 1e-2, {1e-2, 1.0}, OutputMode::gaussian, 7);
  SelectionConfig cfg;
  cfg.kind = EstimationKind::filtering;
  cfg.N = 10;
  cfg.theta = weights_average(10);
  cfg.s = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_select(sys, cfg));
  }
}
BENCHMARK(BM_greedy_filtering)->Arg(10)->Arg(30);

void BM_greedy_smoothing_trace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearSystem sys =
      random_system(n, n, 0.9, 1e-2, {1e-2, 1.0}, OutputMode::gaussian, 11);
  SelectionConfig cfg;
  cfg.kind = EstimationKind::smoothing;
  cfg.N = 10;
  cfg.theta = weights_final(10);
  cfg.s = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_select(sys, cfg));
  }
}
BENCHMARK(BM_greedy_smoothing_trace)->Arg(5)->Arg(10);

void BM_smoothing_certificates(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LinearSystem sys =
      random_system(n, n, 0.5, 1e-2, {1.0, 1.0}, OutputMode::canonical, 13, 1e-2);
  SelectionConfig cfg;
  cfg.kind = EstimationKind::smoothing;
  cfg.m = 9;
  cfg.N = 1;
  cfg.theta = {1.0};
  cfg.s = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smoothing_certificates(sys, cfg));
  }
}
BENCHMARK(BM_smoothing_certificates)->Arg(10)->Arg(30);

void BM_exhaustive_alpha(benchmark::State& state) {
  const LinearSystem sys =
      random_system(4, 6, 0.8, 1e-2, {0.2, 1.0}, OutputMode::gaussian, 17);
  SelectionConfig cfg;
  cfg.N = 1;
  cfg.theta = {1.0};
  cfg.s = 3;
  const ObjectiveEvaluator eval(sys, cfg);
  const SetFunction f = [&](const SensorSet& x) { return eval.value(x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_exhaustive(f, 6));
  }
}
BENCHMARK(BM_exhaustive_alpha);

}  // namespace

BENCHMARK_MAIN();
