/*
 * Copyright (c) 2026, The otcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial vs OpenMP sweeps. Every benchmarked case converges, so both
// variants cover the whole enumeration.

#include <benchmark/benchmark.h>

#include "otcheck/explorer.hpp"
#include "otcheck/properties.hpp"

using namespace otcheck;

namespace {

// Three concurrent ops, each site running its own first.
DeroulerInput derouler_input(int window, int threads) {
  Scenario sc;
  sc.config.alg = AlgorithmId::Suleiman;
  sc.config.nb_sites = 3;
  sc.config.iter = {1, 1, 1};
  sc.config.window = window;
  sc.owners = {0, 1, 2};
  sc.signatures = {OpSignature::del(0), OpSignature::del(0), OpSignature::del(0)};
  sc.traces.per_site = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  DeroulerInput in;
  in.alg = AlgorithmId::Suleiman;
  in.window = window;
  in.alphabet = 2;
  in.initial = DocWindow(window);
  in.ops = replay(sc).ops;
  in.traces = sc.traces;
  in.pairs = {{0, 1}, {0, 2}, {1, 2}};
  in.threads = threads;
  return in;
}

void BM_DeroulerSerial(benchmark::State& state) {
  const DeroulerInput in = derouler_input(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(derouler_serial(in));
}

void BM_DeroulerParallel(benchmark::State& state) {
  const DeroulerInput in = derouler_input(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(derouler_parallel(in));
}

PropertyBounds bounds(int pmax, int threads) {
  PropertyBounds b;
  b.pmax = pmax;
  b.threads = threads;
  return b;
}

void BM_TP1Serial(benchmark::State& state) {
  const PropertyBounds b = bounds(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(check_tp1_serial(AlgorithmId::Imine, b));
}

void BM_TP1Parallel(benchmark::State& state) {
  const PropertyBounds b = bounds(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(check_tp1_parallel(AlgorithmId::Imine, b));
}

void BM_TP2Serial(benchmark::State& state) {
  const PropertyBounds b = bounds(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(check_tp2_serial(AlgorithmId::Suleiman, b));
}

void BM_TP2Parallel(benchmark::State& state) {
  const PropertyBounds b = bounds(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(check_tp2_parallel(AlgorithmId::Suleiman, b));
}

}  // namespace

BENCHMARK(BM_DeroulerSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeroulerParallel)->ArgsProduct({{6, 8}, {2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TP1Serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TP1Parallel)->ArgsProduct({{3, 4}, {2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TP2Serial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TP2Parallel)->ArgsProduct({{6, 8}, {2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
