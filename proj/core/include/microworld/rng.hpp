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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace microworld {

// Every sampling routine takes its generator explicitly. Determinism is per
// build: the engine is fully specified by the standard, the distributions are
// not.
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t n);
bool bernoulli(Rng& rng, double p);

// Index drawn with probability proportional to weights[i]. At least one
// weight must be positive.
std::size_t weighted_index(Rng& rng, std::span<const double> weights);

// splitmix64 finalizer.
std::uint64_t avalanche64(std::uint64_t x);

// Per-instance seed derivation. Each input is folded in with its own round
// constant and a full avalanche pass, so (seed, split, index) triples that
// differ in any component give unrelated streams.
std::uint64_t mix64(std::uint64_t master_seed, std::uint64_t split_id, std::uint64_t index);

}  // namespace microworld
