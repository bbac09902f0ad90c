// Copyright 2026 The Microworld Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "microworld/dataset.hpp"
#include "microworld/instance.hpp"
#include "microworld/language.hpp"
#include "microworld/raster.hpp"
#include "microworld/semantics.hpp"

namespace microworld {
namespace {

const std::vector<std::string>& names() {
  static const auto n = builtin_dataset_names();
  return n;
}

void BM_GenerateInstance(benchmark::State& state) {
  const DatasetSpec ds = builtin_dataset(names()[state.range(0)]);
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_instance(ds, Split::kTrain, index++, 1));
  state.SetLabel(ds.name);
}
BENCHMARK(BM_GenerateInstance)->DenseRange(0, 3);

void BM_Rasterize(benchmark::State& state) {
  const DatasetSpec ds = builtin_dataset("quantification");
  Rng rng(2);
  const WorldModel world = sample_world(ds.world_spec(Split::kTrain), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(world));
}
BENCHMARK(BM_Rasterize);

void BM_Evaluate(benchmark::State& state) {
  const auto xs = generate_instances(builtin_dataset("quantification"), Split::kTrain, 256, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& inst = xs[i++ % xs.size()];
    benchmark::DoNotOptimize(evaluate(inst.caption, inst.world));
  }
}
BENCHMARK(BM_Evaluate);

void BM_RealizeParse(benchmark::State& state) {
  const auto xs = generate_instances(builtin_dataset("spatial"), Split::kTrain, 256, 4);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(parse(realize(xs[i++ % xs.size()].caption)));
}
BENCHMARK(BM_RealizeParse);

}  // namespace
}  // namespace microworld

BENCHMARK_MAIN();
