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

#include "microworld/world.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "microworld/errors.hpp"

namespace microworld {
namespace {

constexpr std::array<std::string_view, 7> kColorNames = {
    "red", "green", "blue", "yellow", "magenta", "cyan", "white",
};

constexpr std::array<Rgb, 7> kColorRgb = {
    Rgb{1, 0, 0}, Rgb{0, 1, 0}, Rgb{0, 0, 1}, Rgb{1, 1, 0}, Rgb{1, 0, 1}, Rgb{0, 1, 1}, Rgb{1, 1, 1},
};

bool in_frame(const Box& box, int image_size) {
  return box.min_x >= 0.0 && box.min_y >= 0.0 && box.max_x <= image_size && box.max_y <= image_size;
}

bool in_range(double v, const Range& r) { return v >= r.min && v <= r.max; }

}  // namespace

std::string_view color_name(Color color) { return kColorNames[static_cast<std::size_t>(color)]; }

std::optional<Color> color_from_name(std::string_view name) {
  for (Color color : kAllColors) {
    if (color_name(color) == name) return color;
  }
  return std::nullopt;
}

Rgb color_rgb(Color color) { return kColorRgb[static_cast<std::size_t>(color)]; }

std::vector<Combination> all_combinations() {
  std::vector<Combination> out;
  out.reserve(kAllShapes.size() * kAllColors.size());
  for (ShapeKind shape : kAllShapes) {
    for (Color color : kAllColors) out.push_back({shape, color});
  }
  return out;
}

std::string combination_name(Combination combination) {
  std::string out(color_name(combination.color));
  out += ' ';
  out += shape_name(combination.shape);
  return out;
}

std::optional<Combination> combination_from_name(std::string_view name) {
  const auto space = name.find(' ');
  if (space == std::string_view::npos) return std::nullopt;
  const auto color = color_from_name(name.substr(0, space));
  const auto shape = shape_from_name(name.substr(space + 1));
  if (!color || !shape) return std::nullopt;
  return Combination{*shape, *color};
}

PlacedShape placed_shape(const Entity& entity, int image_size) {
  return {entity.shape, entity.location, entity.size * image_size / 2.0, entity.distortion, entity.rotation};
}

void WorldSpec::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid world spec: " + what); };
  if (image_size <= 0) fail("image_size must be positive");
  if (count_choices.empty()) fail("count_choices is empty");
  for (int c : count_choices) {
    if (c < 0) fail("negative entity count");
  }
  if (allowed_combinations.empty()) fail("allowed_combinations is empty");
  if (!(size.min > 0.0 && size.min <= size.max)) fail("size range");
  if (!(distortion.min >= 1.0 && distortion.min <= distortion.max)) fail("distortion range");
  if (!(rotation.min >= 0.0 && rotation.min <= rotation.max && rotation.max <= 1.0)) fail("rotation range");
  if (!(shade.stddev > 0.0 && shade.min < shade.max)) fail("shade distribution");
  if (pixel_noise_sigma < 0.0) fail("pixel_noise_sigma must be >= 0");
  if (collision_padding < 0.0) fail("collision_padding must be >= 0");
  if (max_placement_attempts <= 0 || max_world_attempts <= 0) fail("attempt caps must be positive");
}

double trunc_normal(double mu, double sigma, double lo, double hi, Rng& rng) {
  if (!(lo < hi) || !(sigma > 0.0)) throw std::invalid_argument("trunc_normal: need lo < hi and sigma > 0");
  std::normal_distribution<double> normal(mu, sigma);
  for (int i = 0; i < kTruncNormalMaxDraws; ++i) {
    const double v = normal(rng);
    if (v >= lo && v <= hi) return v;
  }
  std::ostringstream msg;
  msg << "trunc_normal(" << mu << ", " << sigma << ", " << lo << ", " << hi << ") rejected "
      << kTruncNormalMaxDraws << " draws";
  throw GenerationError(msg.str());
}

double quantize_attribute(double value) { return std::round(value * 1e6) / 1e6; }

Entity sample_entity(const WorldSpec& spec, Rng& rng) {
  return sample_entity(spec, spec.allowed_combinations, rng);
}

Entity sample_entity(const WorldSpec& spec, std::span<const Combination> combinations, Rng& rng) {
  const Combination combo = combinations[uniform_index(rng, combinations.size())];
  Entity e;
  e.shape = combo.shape;
  e.color = combo.color;
  e.size = quantize_attribute(uniform(rng, spec.size.min, spec.size.max));
  e.distortion = has_distortion(e.shape) ? quantize_attribute(uniform(rng, spec.distortion.min, spec.distortion.max))
                                         : 1.0;
  e.rotation = quantize_attribute(uniform(rng, spec.rotation.min, spec.rotation.max));
  if (e.rotation >= 1.0) e.rotation = 0.0;
  e.shade = quantize_attribute(trunc_normal(spec.shade.mean, spec.shade.stddev, spec.shade.min, spec.shade.max, rng));
  e.location = {quantize_attribute(uniform(rng, 0.0, spec.image_size)),
                quantize_attribute(uniform(rng, 0.0, spec.image_size))};
  return e;
}

std::optional<Entity> place_entity(const WorldModel& world, Entity proto, const WorldSpec& spec, Rng& rng) {
  std::vector<PlacedShape> existing;
  existing.reserve(world.entities.size());
  for (const Entity& e : world.entities) existing.push_back(placed_shape(e, spec.image_size));

  for (int attempt = 0; attempt < spec.max_placement_attempts; ++attempt) {
    if (attempt > 0) {
      proto.location = {quantize_attribute(uniform(rng, 0.0, spec.image_size)),
                        quantize_attribute(uniform(rng, 0.0, spec.image_size))};
    }
    const PlacedShape shape = placed_shape(proto, spec.image_size);
    if (!in_frame(bounding_box(shape), spec.image_size)) continue;
    const bool clear = std::none_of(existing.begin(), existing.end(), [&](const PlacedShape& other) {
      return overlaps(shape, other, spec.collision_padding);
    });
    if (clear) return proto;
  }
  return std::nullopt;
}

WorldModel sample_world(const WorldSpec& spec, Rng& rng) {
  const int count = spec.count_choices[uniform_index(rng, spec.count_choices.size())];
  for (int attempt = 0; attempt < spec.max_world_attempts; ++attempt) {
    WorldModel world;
    world.pixel_noise_sigma = spec.pixel_noise_sigma;
    bool failed = false;
    for (int i = 0; i < count; ++i) {
      const bool required = i == 0 && !spec.required_combinations.empty();
      const Entity proto = required ? sample_entity(spec, spec.required_combinations, rng) : sample_entity(spec, rng);
      auto placed = place_entity(world, proto, spec, rng);
      if (!placed) {
        failed = true;
        break;
      }
      world.entities.push_back(*placed);
    }
    if (!failed) return world;
  }
  throw GenerationError("could not place " + std::to_string(count) + " entities within " +
                        std::to_string(spec.max_world_attempts) + " world attempts");
}

std::vector<std::string> check_world(const WorldModel& world, const WorldSpec& spec) {
  std::vector<std::string> problems;
  const int count = static_cast<int>(world.entities.size());
  if (std::find(spec.count_choices.begin(), spec.count_choices.end(), count) == spec.count_choices.end()) {
    problems.push_back("entity count " + std::to_string(count) + " not allowed");
  }
  auto listed = [](const std::vector<Combination>& set, Combination c) {
    return std::find(set.begin(), set.end(), c) != set.end();
  };
  int required_seen = 0;
  for (std::size_t i = 0; i < world.entities.size(); ++i) {
    const Entity& e = world.entities[i];
    const std::string where = "entity " + std::to_string(i) + ": ";
    const bool allowed = listed(spec.allowed_combinations, e.combination());
    const bool required = listed(spec.required_combinations, e.combination());
    if (required) ++required_seen;
    if (!allowed && !required) problems.push_back(where + combination_name(e.combination()) + " not allowed");
    if (!in_range(e.size, spec.size)) problems.push_back(where + "size out of range");
    if (has_distortion(e.shape) ? !in_range(e.distortion, spec.distortion) : e.distortion != 1.0) {
      problems.push_back(where + "distortion out of range");
    }
    if (!(e.rotation >= 0.0 && e.rotation < 1.0)) problems.push_back(where + "rotation out of range");
    if (!(e.shade >= spec.shade.min && e.shade <= spec.shade.max)) problems.push_back(where + "shade out of range");
    const PlacedShape shape = placed_shape(e, spec.image_size);
    if (!in_frame(bounding_box(shape), spec.image_size)) problems.push_back(where + "not fully in frame");
    for (std::size_t j = 0; j < i; ++j) {
      if (overlaps(shape, placed_shape(world.entities[j], spec.image_size), spec.collision_padding)) {
        problems.push_back(where + "overlaps entity " + std::to_string(j));
      }
    }
  }
  if (!spec.required_combinations.empty() && count > 0 && required_seen == 0) {
    problems.push_back("no entity uses a required combination");
  }
  return problems;
}

}  // namespace microworld
