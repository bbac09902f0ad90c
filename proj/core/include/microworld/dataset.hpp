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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "microworld/captioner.hpp"
#include "microworld/corruption.hpp"
#include "microworld/world.hpp"

namespace microworld {

enum class Split : std::uint8_t { kTrain = 0, kValidation = 1, kTest = 2 };

inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kValidation, Split::kTest};

std::string_view split_name(Split split);
std::optional<Split> split_from_name(std::string_view name);

struct StrategyWeight {
  CorruptionStrategy strategy = CorruptionStrategy::kChangedShape;
  double weight = 1.0;
  friend bool operator==(const StrategyWeight&, const StrategyWeight&) = default;
};

// How negative instances are built: with probability false_world_probability
// the caption is kept and a new world sampled; otherwise the caption is
// corrupted with a strategy drawn by weight among those applicable.
struct NegativeSpec {
  double false_world_probability = 0.5;
  std::vector<StrategyWeight> strategies;
  friend bool operator==(const NegativeSpec&, const NegativeSpec&) = default;
};

struct MixComponent;

struct DatasetSpec {
  std::string name;
  int image_size = kDefaultImageSize;
  std::array<WorldSpec, 3> splits;  // indexed by Split
  CaptionSpec captions;
  NegativeSpec negatives;
  double positive_probability = 0.5;

  // Non-empty for a mixer: each instance delegates to one component drawn by
  // weight, and the fields above are unused.
  std::vector<MixComponent> components;

  // Set by restrict_partition.
  std::optional<std::string> partition;

  bool is_mixer() const { return !components.empty(); }
  const WorldSpec& world_spec(Split split) const { return splits[static_cast<std::size_t>(split)]; }
  WorldSpec& world_spec(Split split) { return splits[static_cast<std::size_t>(split)]; }

  // Throws ConfigError.
  void validate() const;
};

struct MixComponent {
  DatasetSpec spec;
  double weight = 1.0;
};

bool operator==(const DatasetSpec& a, const DatasetSpec& b);
bool operator==(const MixComponent& a, const MixComponent& b);

// Combinations that the given split holds out (its required combinations).
const std::vector<Combination>& held_out_combinations(const DatasetSpec& spec, Split split);

// Combinations held out by any *other* split; captions in `split` never name
// them.
std::vector<Combination> forbidden_combinations(const DatasetSpec& spec, Split split);

// Entity counts the split may produce that no other split does.
std::vector<int> held_out_counts(const DatasetSpec& spec, Split split);

std::vector<std::string> builtin_dataset_names();

// "oneshape", "multishape", "spatial" or "quantification". Throws
// UnknownDataset.
DatasetSpec builtin_dataset(std::string_view name);

// One-line summary of a dataset's split constraints, for listings.
std::string describe(const DatasetSpec& spec);

// Weighted mixer over `specs`. Throws ConfigError when weights are not
// positive or image sizes differ.
DatasetSpec mix(std::vector<DatasetSpec> specs, const std::vector<double>& weights, std::string name = {});

// Every partition tag an instance of `spec` can carry.
std::vector<std::string> known_tags(const DatasetSpec& spec);

// A copy of `spec` that only emits instances carrying `tag`. Throws
// UnknownTag, or StarvationError when the tag has probability zero.
DatasetSpec restrict_partition(DatasetSpec spec, std::string tag);

// Same dataset with pixel noise disabled in every split (recursively).
DatasetSpec without_noise(DatasetSpec spec);

// "C: no hypernyms", "C: only hypernyms" or "C: some hypernyms".
std::string granularity_tag(const Caption& caption);

}  // namespace microworld
