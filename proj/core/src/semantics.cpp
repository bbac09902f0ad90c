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

#include "microworld/semantics.hpp"

#include <algorithm>
#include <iterator>

namespace microworld {

std::vector<std::size_t> filter_entities(const WorldModel& world, const EntityPredicate& predicate) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < world.entities.size(); ++i) {
    if (predicate.matches(world.entities[i])) out.push_back(i);
  }
  return out;
}

bool relation_holds(Relation relation, Point subject, Point object) {
  switch (relation) {
    case Relation::kLeftOf: return subject.x < object.x;
    case Relation::kRightOf: return subject.x > object.x;
    case Relation::kAbove: return subject.y < object.y;
    case Relation::kBelow: return subject.y > object.y;
  }
  return false;
}

bool eval_relation(const WorldModel& world, const EntityPredicate& subject, Relation relation,
                   const EntityPredicate& object) {
  const auto subjects = filter_entities(world, subject);
  const auto objects = filter_entities(world, object);
  for (std::size_t i : subjects) {
    for (std::size_t j : objects) {
      if (i != j && relation_holds(relation, world.entities[i].location, world.entities[j].location)) return true;
    }
  }
  return false;
}

bool eval_quantifier(Quantifier quantifier, std::size_t restrictor_size, std::size_t intersection_size) {
  switch (quantifier) {
    case Quantifier::kA: return intersection_size >= 1;
    case Quantifier::kNo: return intersection_size == 0;
    case Quantifier::kTwo: return intersection_size >= 2;
    case Quantifier::kAll: return intersection_size == restrictor_size;
    case Quantifier::kThe: return restrictor_size == 1 && intersection_size == 1;
    case Quantifier::kMost: return restrictor_size > 0 && 2 * intersection_size > restrictor_size;
  }
  return false;
}

bool evaluate(const Caption& caption, const WorldModel& world) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Existential>) {
          return !filter_entities(world, node.predicate).empty();
        } else if constexpr (std::is_same_v<T, Relational>) {
          return eval_relation(world, node.subject, node.relation, node.object);
        } else if constexpr (std::is_same_v<T, Quantified>) {
          const auto restrictor = filter_entities(world, node.restrictor);
          const auto body = filter_entities(world, node.body);
          std::vector<std::size_t> both;
          std::set_intersection(restrictor.begin(), restrictor.end(), body.begin(), body.end(),
                                std::back_inserter(both));
          return eval_quantifier(node.quantifier, restrictor.size(), both.size());
        } else {
          return evaluate(*node.left, world) && evaluate(*node.right, world);
        }
      },
      caption.node);
}

}  // namespace microworld
