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

#include <vector>

#include "microworld/caption.hpp"
#include "microworld/rng.hpp"
#include "microworld/world.hpp"

namespace microworld {

struct PatternWeights {
  double existential = 0.0;
  double relational = 0.0;
  double quantified = 0.0;
  double conjunction = 0.0;  // "and" of two captions drawn from the other patterns
  friend bool operator==(const PatternWeights&, const PatternWeights&) = default;
};

// Which predicate fields a generated caption specifies.
struct GranularityWeights {
  double color_shape = 1.0;  // "red square"
  double shape_only = 1.0;   // "square"
  double color_only = 1.0;   // "red shape"
  friend bool operator==(const GranularityWeights&, const GranularityWeights&) = default;
};

struct CaptionSpec {
  PatternWeights patterns;
  GranularityWeights granularity;
  std::vector<Quantifier> quantifiers;
  std::vector<Relation> relations;
  double relation_margin = 4.0;  // minimum centre gap on the relation axis, pixels
  int max_attempts = 100;

  void validate() const;
  friend bool operator==(const CaptionSpec&, const CaptionSpec&) = default;
};

struct CaptionConstraints {
  // When non-empty, existential and relational captions must refer to an
  // entity whose combination is listed here.
  std::vector<Combination> focus;
  // Fully specified predicates must not name these combinations.
  std::vector<Combination> forbidden;
};

bool is_forbidden(const Caption& caption, const std::vector<Combination>& forbidden);

// An agreeing caption for `world`. Throws UnsatisfiableCaption after
// spec.max_attempts rejected candidates.
Caption sample_caption(const WorldModel& world, const CaptionSpec& spec, Rng& rng,
                       const CaptionConstraints& constraints = {});

}  // namespace microworld
