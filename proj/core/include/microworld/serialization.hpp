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

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "microworld/caption.hpp"
#include "microworld/dataset.hpp"
#include "microworld/instance.hpp"
#include "microworld/world.hpp"

namespace microworld {

// Canonical records: object keys are emitted in alphabetical order and
// attribute values are already rounded to 6 decimal places, so dump() with no
// indentation is byte-stable.

nlohmann::json predicate_to_json(const EntityPredicate& predicate);
EntityPredicate predicate_from_json(const nlohmann::json& j);

nlohmann::json caption_to_json(const Caption& caption);
Caption caption_from_json(const nlohmann::json& j);

nlohmann::json world_to_json(const WorldModel& world);
WorldModel world_from_json(const nlohmann::json& j);

// One JSONL line: {ast, caption, index, label, partition_tag, sub_seed, world}.
nlohmann::json instance_record(const Instance& instance);

// Dataset configuration files. Missing fields take the WorldSpec /
// CaptionSpec defaults; unknown keys are rejected. Throws ConfigError.
nlohmann::json dataset_to_json(const DatasetSpec& spec);
DatasetSpec dataset_from_json(const nlohmann::json& j);

// A built-in name, a config file, or a manifest.json (whose config snapshot
// is used).
DatasetSpec load_dataset(std::string_view name_or_path);

}  // namespace microworld
