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
#include <string_view>
#include <vector>

#include "microworld/caption.hpp"
#include "microworld/rng.hpp"
#include "microworld/world.hpp"

namespace microworld {

enum class CorruptionStrategy : std::uint8_t {
  kChangedShape,
  kChangedColor,
  kChangedBoth,
  kSwappedDirection,
  kSubjectRandomAttrs,
  kObjectRandomAttrs,
  kRandomAttrs,
  kRandomExistingAttrs,
  kFalseWorld,
};

inline constexpr std::array<CorruptionStrategy, 9> kAllStrategies = {
    CorruptionStrategy::kChangedShape,       CorruptionStrategy::kChangedColor,
    CorruptionStrategy::kChangedBoth,        CorruptionStrategy::kSwappedDirection,
    CorruptionStrategy::kSubjectRandomAttrs, CorruptionStrategy::kObjectRandomAttrs,
    CorruptionStrategy::kRandomAttrs,        CorruptionStrategy::kRandomExistingAttrs,
    CorruptionStrategy::kFalseWorld,
};

// snake_case config name, e.g. "changed_shape".
std::string_view strategy_name(CorruptionStrategy strategy);
std::optional<CorruptionStrategy> strategy_from_name(std::string_view name);
// Partition tag, e.g. "I: changed shape".
std::string_view strategy_tag(CorruptionStrategy strategy);

inline constexpr int kMaxCorruptionAttempts = 100;
inline constexpr int kMaxFalseWorldAttempts = 1000;

// Whether the caption has a part the strategy can modify. kFalseWorld is
// never applicable here: it keeps the caption and replaces the world.
bool is_applicable(CorruptionStrategy strategy, const Caption& caption);

// A modified caption that is false in `world`. Throws InapplicableStrategy or,
// after kMaxCorruptionAttempts candidates, NoFalseVariant.
Caption corrupt_caption(const Caption& caption, const WorldModel& world, CorruptionStrategy strategy, Rng& rng,
                        const std::vector<Combination>& forbidden = {});

// A world satisfying `spec` in which `caption` is false. Throws
// ExhaustionError after kMaxFalseWorldAttempts.
WorldModel make_false_world(const Caption& caption, const WorldSpec& spec, Rng& rng);

}  // namespace microworld
