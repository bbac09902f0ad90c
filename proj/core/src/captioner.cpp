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

#include "microworld/captioner.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "microworld/errors.hpp"
#include "microworld/semantics.hpp"

namespace microworld {
namespace {

enum Pattern : std::size_t { kExistential, kRelational, kQuantified, kConjunction };

// Probability that a quantified caption takes its attribute values from an
// entity of the world rather than from the whole attribute space.
constexpr double kFromWorldProbability = 0.8;

EntityPredicate describe(const Entity& e, const GranularityWeights& g, Rng& rng) {
  const std::array<double, 3> w = {g.color_shape, g.shape_only, g.color_only};
  switch (weighted_index(rng, w)) {
    case 0: return {e.shape, e.color};
    case 1: return {e.shape, std::nullopt};
    default: return {std::nullopt, e.color};
  }
}

bool listed(const std::vector<Combination>& set, Combination c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

std::vector<std::size_t> candidates(const WorldModel& world, const std::vector<Combination>& focus) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < world.entities.size(); ++i) {
    if (focus.empty() || listed(focus, world.entities[i].combination())) out.push_back(i);
  }
  return out;
}

std::optional<Caption> existential(const WorldModel& world, const CaptionSpec& spec, Rng& rng,
                                   const std::vector<Combination>& focus) {
  const auto pool = candidates(world, focus);
  if (pool.empty()) return std::nullopt;
  const Entity& e = world.entities[pool[uniform_index(rng, pool.size())]];
  return Existential{describe(e, spec.granularity, rng)};
}

double axis_gap(Relation r, Point a, Point b) {
  return (r == Relation::kLeftOf || r == Relation::kRightOf) ? std::abs(a.x - b.x) : std::abs(a.y - b.y);
}

std::optional<Caption> relational(const WorldModel& world, const CaptionSpec& spec, Rng& rng,
                                  const std::vector<Combination>& focus) {
  const Relation rel = spec.relations[uniform_index(rng, spec.relations.size())];
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const auto& es = world.entities;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (i == j || !relation_holds(rel, es[i].location, es[j].location)) continue;
      if (axis_gap(rel, es[i].location, es[j].location) < spec.relation_margin) continue;
      if (!focus.empty() && !listed(focus, es[i].combination()) && !listed(focus, es[j].combination())) continue;
      pairs.emplace_back(i, j);
    }
  }
  if (pairs.empty()) return std::nullopt;
  const auto [i, j] = pairs[uniform_index(rng, pairs.size())];
  Relational r;
  r.subject = describe(es[i], spec.granularity, rng);
  r.relation = rel;
  r.object = describe(es[j], spec.granularity, rng);
  return r;
}

// Restrictor/body shapes of the quantified templates:
//   0  shapes .. <color>          "The shape is green."
//   1  shapes .. <shape>          "Most shapes are rectangles."
//   2  shapes .. <color shape>    "No shape is a red triangle."
//   3  <shape> .. <color>         "All triangles are green."
//   4  <color> shapes .. <shape>  "Two blue shapes are pentagons."
std::optional<Caption> quantified(const WorldModel& world, const CaptionSpec& spec, Rng& rng) {
  if (world.entities.empty()) return std::nullopt;
  Quantified q;
  q.quantifier = spec.quantifiers[uniform_index(rng, spec.quantifiers.size())];
  ShapeKind shape;
  Color color;
  // "no" is only true for attributes the world lacks.
  if (q.quantifier != Quantifier::kNo && bernoulli(rng, kFromWorldProbability)) {
    const Entity& e = world.entities[uniform_index(rng, world.entities.size())];
    shape = e.shape;
    color = e.color;
  } else {
    shape = kAllShapes[uniform_index(rng, kAllShapes.size())];
    color = kAllColors[uniform_index(rng, kAllColors.size())];
  }
  switch (uniform_index(rng, 5)) {
    case 0: q.body = {std::nullopt, color}; break;
    case 1: q.body = {shape, std::nullopt}; break;
    case 2: q.body = {shape, color}; break;
    case 3:
      q.restrictor = {shape, std::nullopt};
      q.body = {std::nullopt, color};
      break;
    default:
      q.restrictor = {std::nullopt, color};
      q.body = {shape, std::nullopt};
      break;
  }
  // Vacuous restrictors make "all" and "no" trivially true.
  if (filter_entities(world, q.restrictor).empty()) return std::nullopt;
  return q;
}

std::optional<Caption> simple(std::size_t pattern, const WorldModel& world, const CaptionSpec& spec, Rng& rng,
                              const std::vector<Combination>& focus) {
  switch (pattern) {
    case kExistential: return existential(world, spec, rng, focus);
    case kRelational: return relational(world, spec, rng, focus);
    default: return quantified(world, spec, rng);
  }
}

}  // namespace

void CaptionSpec::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid caption spec: " + what); };
  const std::array<double, 4> w = {patterns.existential, patterns.relational, patterns.quantified,
                                   patterns.conjunction};
  if (std::any_of(w.begin(), w.end(), [](double x) { return x < 0.0; })) fail("negative pattern weight");
  if (w[0] + w[1] + w[2] <= 0.0) fail("no positive non-conjunctive pattern weight");
  if (granularity.color_shape < 0 || granularity.shape_only < 0 || granularity.color_only < 0 ||
      granularity.color_shape + granularity.shape_only + granularity.color_only <= 0) {
    fail("granularity weights");
  }
  if (patterns.quantified > 0 && quantifiers.empty()) fail("quantified pattern without quantifiers");
  if (patterns.relational > 0 && relations.empty()) fail("relational pattern without relations");
  if (relation_margin < 0) fail("negative relation margin");
  if (max_attempts <= 0) fail("max_attempts must be positive");
}

bool is_forbidden(const Caption& caption, const std::vector<Combination>& forbidden) {
  if (forbidden.empty()) return false;
  const auto named = mentioned_combinations(caption);
  return std::any_of(named.begin(), named.end(), [&](Combination c) { return listed(forbidden, c); });
}

Caption sample_caption(const WorldModel& world, const CaptionSpec& spec, Rng& rng,
                       const CaptionConstraints& constraints) {
  const std::array<double, 4> pattern_weights = {spec.patterns.existential, spec.patterns.relational,
                                                 spec.patterns.quantified, spec.patterns.conjunction};
  const std::array<double, 3> simple_weights = {spec.patterns.existential, spec.patterns.relational,
                                                spec.patterns.quantified};
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    const std::size_t pattern = weighted_index(rng, pattern_weights);
    std::optional<Caption> caption;
    if (pattern == kConjunction) {
      auto left = simple(weighted_index(rng, simple_weights), world, spec, rng, constraints.focus);
      auto right = simple(weighted_index(rng, simple_weights), world, spec, rng, {});
      if (left && right) caption = conjoin(std::move(*left), std::move(*right));
    } else {
      caption = simple(pattern, world, spec, rng, constraints.focus);
    }
    if (!caption || is_forbidden(*caption, constraints.forbidden)) continue;
    if (evaluate(*caption, world)) return *caption;
  }
  throw UnsatisfiableCaption("no agreeing caption within " + std::to_string(spec.max_attempts) + " attempts");
}

}  // namespace microworld
