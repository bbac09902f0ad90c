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

#include <cstdint>
#include <string>
#include <vector>

#include "microworld/caption.hpp"
#include "microworld/dataset.hpp"
#include "microworld/raster.hpp"
#include "microworld/world.hpp"

namespace microworld {

struct Instance {
  Image image;
  std::string caption_text;
  Caption caption;
  WorldModel world;
  bool label = false;  // evaluate(caption, world)
  std::string partition_tag;
  std::uint64_t sub_seed = 0;
  Split split = Split::kTrain;
  std::uint64_t index = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline std::uint64_t instance_seed(std::uint64_t master_seed, Split split, std::uint64_t index) {
  return mix64(master_seed, static_cast<std::uint64_t>(split), index);
}

// Restricted generation gives up after this many rejected candidates.
inline constexpr int kMaxPartitionAttempts = 20000;

// Attempts at a (world, caption) pair before generation fails.
inline constexpr int kMaxInstanceAttempts = 50;

// Deterministic in (spec, split, index, master_seed) only. Throws
// GenerationError with context when the spec cannot be satisfied.
Instance generate_instance(const DatasetSpec& spec, Split split, std::uint64_t index, std::uint64_t master_seed);

// Indices [first_index, first_index + count) in order. The result does not
// depend on `jobs`.
std::vector<Instance> generate_instances(const DatasetSpec& spec, Split split, std::uint64_t count,
                                         std::uint64_t master_seed, unsigned jobs = 1,
                                         std::uint64_t first_index = 0);

// Every tag the instance can be selected by: its partition_tag plus the
// derived ones ("correct instances", "instances with most", ...). Mixer
// instances carry their component prefix, e.g. "spatial/I: swapped direction".
std::vector<std::string> instance_tags(const Instance& instance);

}  // namespace microworld
