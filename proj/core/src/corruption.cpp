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

#include "microworld/corruption.hpp"

#include <algorithm>
#include <set>

#include "microworld/errors.hpp"
#include "microworld/semantics.hpp"

namespace microworld {
namespace {

constexpr std::array<std::string_view, 9> kStrategyNames = {
    "changed_shape",       "changed_color",       "changed_both",
    "swapped_direction",   "subject_random_attrs", "object_random_attrs",
    "random_attrs",        "random_existing_attrs", "false_world",
};

constexpr std::array<std::string_view, 9> kStrategyTags = {
    "I: changed shape",       "I: changed color",        "I: changed both",
    "I: swapped direction",   "I: subject random attr.", "I: object random attr.",
    "I: random attr.",        "I: random existing attr.", "I: false world",
};

// A predicate position: which conjunct (-1 when the caption is not a
// conjunction) and which argument inside it (0 = existential / subject /
// restrictor, 1 = object / body).
struct Slot {
  int conjunct = -1;
  int argument = 0;
};

const Caption& conjunct(const Caption& c, int which) {
  if (which < 0) return c;
  const Conjunction& k = c.as<Conjunction>();
  return which == 0 ? *k.left : *k.right;
}

EntityPredicate& argument(Caption& c, int which) {
  return std::visit(
      [&](auto& node) -> EntityPredicate& {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Existential>) {
          return node.predicate;
        } else if constexpr (std::is_same_v<T, Relational>) {
          return which == 0 ? node.subject : node.object;
        } else if constexpr (std::is_same_v<T, Quantified>) {
          return which == 0 ? node.restrictor : node.body;
        } else {
          throw std::logic_error("conjunction has no direct arguments");
        }
      },
      c.node);
}

int arity(const Caption& c) { return c.is<Existential>() ? 1 : 2; }

std::vector<Slot> all_slots(const Caption& c) {
  std::vector<Slot> out;
  if (c.is<Conjunction>()) {
    for (int k = 0; k < 2; ++k) {
      for (int a = 0; a < arity(conjunct(c, k)); ++a) out.push_back({k, a});
    }
  } else {
    for (int a = 0; a < arity(c); ++a) out.push_back({-1, a});
  }
  return out;
}

EntityPredicate predicate_at(const Caption& c, Slot s) {
  Caption copy = conjunct(c, s.conjunct);
  return argument(copy, s.argument);
}

// Copy of `c` with the sub-caption at `which` replaced.
Caption replace_conjunct(const Caption& c, int which, Caption part) {
  if (which < 0) return part;
  const Conjunction& k = c.as<Conjunction>();
  return which == 0 ? conjoin(std::move(part), *k.right) : conjoin(*k.left, std::move(part));
}

Caption with_predicate(const Caption& c, Slot s, EntityPredicate p) {
  Caption part = conjunct(c, s.conjunct);
  argument(part, s.argument) = p;
  return replace_conjunct(c, s.conjunct, std::move(part));
}

bool is_relational_slot(const Caption& c, Slot s) { return conjunct(c, s.conjunct).is<Relational>(); }

std::vector<Slot> eligible_slots(CorruptionStrategy strategy, const Caption& c) {
  std::vector<Slot> out;
  for (Slot s : all_slots(c)) {
    const EntityPredicate p = predicate_at(c, s);
    bool ok = false;
    switch (strategy) {
      case CorruptionStrategy::kChangedShape: ok = p.shape.has_value(); break;
      case CorruptionStrategy::kChangedColor: ok = p.color.has_value(); break;
      case CorruptionStrategy::kChangedBoth:
      case CorruptionStrategy::kRandomExistingAttrs: ok = p.fully_specified(); break;
      case CorruptionStrategy::kSwappedDirection: ok = is_relational_slot(c, s) && s.argument == 0; break;
      case CorruptionStrategy::kSubjectRandomAttrs:
        ok = is_relational_slot(c, s) && s.argument == 0 && (p.shape || p.color);
        break;
      case CorruptionStrategy::kObjectRandomAttrs:
        ok = is_relational_slot(c, s) && s.argument == 1 && (p.shape || p.color);
        break;
      case CorruptionStrategy::kRandomAttrs: ok = p.shape || p.color; break;
      case CorruptionStrategy::kFalseWorld: ok = false; break;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

template <typename T, std::size_t N>
T other_than(const std::array<T, N>& values, T current, Rng& rng) {
  T out;
  do {
    out = values[uniform_index(rng, N)];
  } while (out == current);
  return out;
}

// Same specified fields, fresh values.
EntityPredicate resampled(const EntityPredicate& p, Rng& rng) {
  EntityPredicate out;
  if (p.shape) out.shape = kAllShapes[uniform_index(rng, kAllShapes.size())];
  if (p.color) out.color = kAllColors[uniform_index(rng, kAllColors.size())];
  return out;
}

std::optional<EntityPredicate> existing_attributes(const WorldModel& world, Rng& rng) {
  std::set<ShapeKind> shapes;
  std::set<Color> colors;
  std::set<Combination> present;
  for (const Entity& e : world.entities) {
    shapes.insert(e.shape);
    colors.insert(e.color);
    present.insert(e.combination());
  }
  std::vector<Combination> absent;
  for (ShapeKind s : shapes) {
    for (Color c : colors) {
      if (!present.count({s, c})) absent.push_back({s, c});
    }
  }
  if (absent.empty()) return std::nullopt;
  const Combination pick = absent[uniform_index(rng, absent.size())];
  return EntityPredicate{pick.shape, pick.color};
}

std::optional<Caption> candidate(CorruptionStrategy strategy, const Caption& caption, Slot slot,
                                 const WorldModel& world, Rng& rng) {
  const EntityPredicate p = predicate_at(caption, slot);
  EntityPredicate q = p;
  switch (strategy) {
    case CorruptionStrategy::kChangedShape:
      q.shape = other_than(kAllShapes, *p.shape, rng);
      break;
    case CorruptionStrategy::kChangedColor:
      q.color = other_than(kAllColors, *p.color, rng);
      break;
    case CorruptionStrategy::kChangedBoth:
      q.shape = other_than(kAllShapes, *p.shape, rng);
      q.color = other_than(kAllColors, *p.color, rng);
      break;
    case CorruptionStrategy::kSwappedDirection: {
      Caption part = conjunct(caption, slot.conjunct);
      Relational r = part.as<Relational>();
      r.relation = inverse(r.relation);
      return replace_conjunct(caption, slot.conjunct, r);
    }
    case CorruptionStrategy::kSubjectRandomAttrs:
    case CorruptionStrategy::kObjectRandomAttrs:
    case CorruptionStrategy::kRandomAttrs:
      q = resampled(p, rng);
      break;
    case CorruptionStrategy::kRandomExistingAttrs: {
      auto existing = existing_attributes(world, rng);
      if (!existing) return std::nullopt;
      q = *existing;
      break;
    }
    case CorruptionStrategy::kFalseWorld:
      return std::nullopt;
  }
  return with_predicate(caption, slot, q);
}

}  // namespace

std::string_view strategy_name(CorruptionStrategy strategy) {
  return kStrategyNames[static_cast<std::size_t>(strategy)];
}

std::optional<CorruptionStrategy> strategy_from_name(std::string_view name) {
  for (CorruptionStrategy s : kAllStrategies) {
    if (strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view strategy_tag(CorruptionStrategy strategy) { return kStrategyTags[static_cast<std::size_t>(strategy)]; }

bool is_applicable(CorruptionStrategy strategy, const Caption& caption) {
  return !eligible_slots(strategy, caption).empty();
}

Caption corrupt_caption(const Caption& caption, const WorldModel& world, CorruptionStrategy strategy, Rng& rng,
                        const std::vector<Combination>& forbidden) {
  const std::vector<Slot> slots = eligible_slots(strategy, caption);
  if (slots.empty()) {
    throw InapplicableStrategy(std::string(strategy_name(strategy)) + " does not apply to this caption");
  }
  for (int attempt = 0; attempt < kMaxCorruptionAttempts; ++attempt) {
    const Slot slot = slots[uniform_index(rng, slots.size())];
    auto modified = candidate(strategy, caption, slot, world, rng);
    if (!modified) break;
    if (*modified == caption) continue;
    bool blocked = false;
    for (Combination c : mentioned_combinations(*modified)) {
      if (std::find(forbidden.begin(), forbidden.end(), c) != forbidden.end()) blocked = true;
    }
    if (blocked) continue;
    if (!evaluate(*modified, world)) return *modified;
  }
  throw NoFalseVariant(std::string(strategy_name(strategy)) + " found no false variant");
}

WorldModel make_false_world(const Caption& caption, const WorldSpec& spec, Rng& rng) {
  for (int attempt = 0; attempt < kMaxFalseWorldAttempts; ++attempt) {
    WorldModel world = sample_world(spec, rng);
    if (!evaluate(caption, world)) return world;
  }
  throw ExhaustionError("caption stayed true in " + std::to_string(kMaxFalseWorldAttempts) + " sampled worlds");
}

}  // namespace microworld
