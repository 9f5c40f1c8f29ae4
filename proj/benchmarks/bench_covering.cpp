// Copyright 2026 The Covering Authors
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

#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "covering/hypercover.hpp"
#include "covering/sphere.hpp"
#include "covering/torus.hpp"

namespace {

using namespace covering;

void BM_GreedyCover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoverInstance inst = random_cover_instance(n, 2 * n, 2, std::max<std::size_t>(3, n / 8), 7);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cover(inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GreedyCover)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_FractionalCoverLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoverInstance inst = random_cover_instance(n, 2 * n, 2, std::max<std::size_t>(3, n / 8), 7);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_cover_lp(inst));
}
BENCHMARK(BM_FractionalCoverLp)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_ExactFractionalCover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoverInstance inst = random_cover_instance(n, 2 * n, 2, 5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_cover_number_exact(inst));
}
BENCHMARK(BM_ExactFractionalCover)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_TorusPackingNet(benchmark::State& state) {
  const double delta = 1.0 / static_cast<double>(state.range(0));
  TorusRegion torus;
  torus.dim = 2;
  torus.side = 1.0;
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(saturated_packing_net(torus, delta, std::nullopt, ++seed));
}
BENCHMARK(BM_TorusPackingNet)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_CapPacking(benchmark::State& state) {
  const double delta = std::numbers::pi / static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(saturated_cap_packing(2, delta, ++seed));
}
BENCHMARK(BM_CapPacking)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_CapMeasure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double phi = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cap_measure(n, phi));
    phi = phi > 1.5 ? 0.1 : phi + 0.01;
  }
}
BENCHMARK(BM_CapMeasure)->DenseRange(2, 20, 6);

}  // namespace

BENCHMARK_MAIN();
