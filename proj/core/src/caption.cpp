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

#include "microworld/caption.hpp"

#include <algorithm>

namespace microworld {
namespace {

constexpr std::array<std::string_view, 4> kRelationNames = {"left_of", "right_of", "above", "below"};
constexpr std::array<std::string_view, 6> kQuantifierNames = {"a", "no", "the", "two", "most", "all"};

void collect(const Caption& caption, std::vector<EntityPredicate>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Existential>) {
          out.push_back(node.predicate);
        } else if constexpr (std::is_same_v<T, Relational>) {
          out.push_back(node.subject);
          out.push_back(node.object);
        } else if constexpr (std::is_same_v<T, Quantified>) {
          out.push_back(node.restrictor);
          out.push_back(node.body);
        } else {
          collect(*node.left, out);
          collect(*node.right, out);
        }
      },
      caption.node);
}

}  // namespace

bool operator==(const Conjunction& a, const Conjunction& b) {
  auto same = [](const std::shared_ptr<const Caption>& x, const std::shared_ptr<const Caption>& y) {
    if (!x || !y) return x == y;
    return *x == *y;
  };
  return same(a.left, b.left) && same(a.right, b.right);
}

Relation inverse(Relation relation) {
  switch (relation) {
    case Relation::kLeftOf: return Relation::kRightOf;
    case Relation::kRightOf: return Relation::kLeftOf;
    case Relation::kAbove: return Relation::kBelow;
    case Relation::kBelow: return Relation::kAbove;
  }
  return relation;
}

std::string_view relation_name(Relation relation) { return kRelationNames[static_cast<std::size_t>(relation)]; }

std::optional<Relation> relation_from_name(std::string_view name) {
  for (Relation r : kAllRelations) {
    if (relation_name(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view quantifier_name(Quantifier quantifier) {
  return kQuantifierNames[static_cast<std::size_t>(quantifier)];
}

std::optional<Quantifier> quantifier_from_name(std::string_view name) {
  for (Quantifier q : kAllQuantifiers) {
    if (quantifier_name(q) == name) return q;
  }
  return std::nullopt;
}

Caption conjoin(Caption left, Caption right) {
  return Conjunction{std::make_shared<const Caption>(std::move(left)), std::make_shared<const Caption>(std::move(right))};
}

std::vector<EntityPredicate> predicates(const Caption& caption) {
  std::vector<EntityPredicate> out;
  collect(caption, out);
  return out;
}

std::vector<Combination> mentioned_combinations(const Caption& caption) {
  std::vector<Combination> out;
  for (const EntityPredicate& p : predicates(caption)) {
    if (p.fully_specified()) out.push_back({*p.shape, *p.color});
  }
  return out;
}

bool is_valid(const Caption& caption) {
  if (!caption.is<Conjunction>()) return true;
  const Conjunction& c = caption.as<Conjunction>();
  return c.left && c.right && !c.left->is<Conjunction>() && !c.right->is<Conjunction>();
}

}  // namespace microworld
