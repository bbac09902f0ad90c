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
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "microworld/geometry.hpp"
#include "microworld/world.hpp"

namespace microworld {

// A (shape, color) pattern. An empty shape is the hypernym "shape"; an empty
// color matches every color.
struct EntityPredicate {
  std::optional<ShapeKind> shape;
  std::optional<Color> color;

  bool matches(const Entity& entity) const {
    return (!shape || entity.shape == *shape) && (!color || entity.color == *color);
  }
  bool is_hypernym() const { return !shape.has_value(); }
  bool fully_specified() const { return shape && color; }

  friend bool operator==(const EntityPredicate&, const EntityPredicate&) = default;
};

enum class Relation : std::uint8_t { kLeftOf, kRightOf, kAbove, kBelow };

inline constexpr std::array<Relation, 4> kAllRelations = {
    Relation::kLeftOf, Relation::kRightOf, Relation::kAbove, Relation::kBelow,
};

Relation inverse(Relation relation);
std::string_view relation_name(Relation relation);
std::optional<Relation> relation_from_name(std::string_view name);

enum class Quantifier : std::uint8_t { kA, kNo, kThe, kTwo, kMost, kAll };

inline constexpr std::array<Quantifier, 6> kAllQuantifiers = {
    Quantifier::kA, Quantifier::kNo, Quantifier::kThe, Quantifier::kTwo, Quantifier::kMost, Quantifier::kAll,
};

std::string_view quantifier_name(Quantifier quantifier);
std::optional<Quantifier> quantifier_from_name(std::string_view name);

struct Caption;

struct Existential {
  EntityPredicate predicate;
  friend bool operator==(const Existential&, const Existential&) = default;
};

struct Relational {
  EntityPredicate subject;
  Relation relation = Relation::kLeftOf;
  EntityPredicate object;
  friend bool operator==(const Relational&, const Relational&) = default;
};

struct Quantified {
  Quantifier quantifier = Quantifier::kA;
  EntityPredicate restrictor;
  EntityPredicate body;
  friend bool operator==(const Quantified&, const Quantified&) = default;
};

// Children are immutable and shared between copies.
struct Conjunction {
  std::shared_ptr<const Caption> left;
  std::shared_ptr<const Caption> right;
  friend bool operator==(const Conjunction& a, const Conjunction& b);
};

struct Caption {
  using Node = std::variant<Existential, Relational, Quantified, Conjunction>;
  Node node;

  Caption() = default;
  Caption(Existential e) : node(std::move(e)) {}
  Caption(Relational r) : node(std::move(r)) {}
  Caption(Quantified q) : node(std::move(q)) {}
  Caption(Conjunction c) : node(std::move(c)) {}

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  const T& as() const { return std::get<T>(node); }

  friend bool operator==(const Caption&, const Caption&) = default;
};

Caption conjoin(Caption left, Caption right);

// Every predicate in the tree, in left-to-right surface order.
std::vector<EntityPredicate> predicates(const Caption& caption);

// Combinations named by fully specified predicates.
std::vector<Combination> mentioned_combinations(const Caption& caption);

// Conjunction children must be non-conjunctive and present.
bool is_valid(const Caption& caption);

}  // namespace microworld
