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
#include <vector>

#include "microworld/caption.hpp"
#include "microworld/world.hpp"

namespace microworld {

// Indices of the entities the predicate describes, ascending.
std::vector<std::size_t> filter_entities(const WorldModel& world, const EntityPredicate& predicate);

// Strict comparison of entity centres on the relation's axis; y grows
// downward, so "above" means a smaller y.
bool relation_holds(Relation relation, Point subject, Point object);

// Some ordered pair of distinct entities (i from subject, j from object)
// stands in the relation.
bool eval_relation(const WorldModel& world, const EntityPredicate& subject, Relation relation,
                   const EntityPredicate& object);

// Cardinality comparison. Requires intersection_size <= restrictor_size.
//   a    : |R & B| >= 1          no   : |R & B| == 0
//   two  : |R & B| >= 2          all  : |R & B| == |R|
//   the  : |R| == 1 and |R & B| == 1
//   most : |R| > 0 and |R & B| / |R| > 1/2
bool eval_quantifier(Quantifier quantifier, std::size_t restrictor_size, std::size_t intersection_size);

// Truth of a caption in a world. Total.
bool evaluate(const Caption& caption, const WorldModel& world);

}  // namespace microworld
