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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "microworld/geometry.hpp"
#include "microworld/rng.hpp"

namespace microworld {

inline constexpr int kDefaultImageSize = 64;

enum class Color : std::uint8_t {
  kRed,
  kGreen,
  kBlue,
  kYellow,
  kMagenta,
  kCyan,
  kWhite,
};

inline constexpr std::array<Color, 7> kAllColors = {
    Color::kRed, Color::kGreen, Color::kBlue, Color::kYellow, Color::kMagenta, Color::kCyan, Color::kWhite,
};

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

std::string_view color_name(Color color);
std::optional<Color> color_from_name(std::string_view name);
Rgb color_rgb(Color color);

// A (shape, color) pair; the unit of held-out generalization.
struct Combination {
  ShapeKind shape = ShapeKind::kSquare;
  Color color = Color::kRed;
  friend auto operator<=>(const Combination&, const Combination&) = default;
};

// All 56 combinations, shape-major in kAllShapes / kAllColors order.
std::vector<Combination> all_combinations();

// "red square" <-> Combination.
std::string combination_name(Combination combination);
std::optional<Combination> combination_from_name(std::string_view name);

struct Entity {
  ShapeKind shape = ShapeKind::kSquare;
  Color color = Color::kRed;
  Point location;            // shape centre in pixels
  double size = 0.2;         // box side as a fraction of the image side
  double distortion = 1.0;   // width / height for rectangles and ellipses
  double rotation = 0.0;     // fraction of a full turn, [0, 1)
  double shade = 0.0;        // signed blend factor, [-1, 1]

  Combination combination() const { return {shape, color}; }
  friend bool operator==(const Entity&, const Entity&) = default;
};

PlacedShape placed_shape(const Entity& entity, int image_size = kDefaultImageSize);

struct WorldModel {
  std::vector<Entity> entities;
  double pixel_noise_sigma = 0.0;
  friend bool operator==(const WorldModel&, const WorldModel&) = default;
};

struct Range {
  double min = 0.0;
  double max = 1.0;
  friend bool operator==(const Range&, const Range&) = default;
};

struct TruncNormalParams {
  double mean = 0.0;
  double stddev = 1.0;
  double min = -1.0;
  double max = 1.0;
  friend bool operator==(const TruncNormalParams&, const TruncNormalParams&) = default;
};

// Generator constraints for one split.
//
// Entities draw their (shape, color) uniformly from allowed_combinations.
// When required_combinations is non-empty, exactly one entity of every world
// draws from it instead; this is how evaluation splits introduce held-out
// combinations while distractors stay on training combinations.
struct WorldSpec {
  int image_size = kDefaultImageSize;
  std::vector<int> count_choices;
  std::vector<Combination> allowed_combinations;
  std::vector<Combination> required_combinations;
  Range size{0.15, 0.3};
  Range distortion{2.0, 3.0};
  Range rotation{0.0, 1.0};
  TruncNormalParams shade{0.0, 0.5, -1.0, 1.0};
  double pixel_noise_sigma = 0.1;
  double collision_padding = 2.0;
  int max_placement_attempts = 100;
  int max_world_attempts = 10;

  // Throws ConfigError on an invalid spec.
  void validate() const;
  friend bool operator==(const WorldSpec&, const WorldSpec&) = default;
};

// Resample cap for trunc_normal.
inline constexpr int kTruncNormalMaxDraws = 10000;

// Normal(mu, sigma) draw resampled until it lands in [lo, hi]. Throws
// GenerationError after kTruncNormalMaxDraws rejections.
double trunc_normal(double mu, double sigma, double lo, double hi, Rng& rng);

// Attribute values are rounded to 6 decimal places at sampling time so the
// textual world record reproduces the in-memory world exactly.
double quantize_attribute(double value);

// Samples every attribute. (shape, color) is uniform over
// spec.allowed_combinations; the location is an unplaced uniform draw.
Entity sample_entity(const WorldSpec& spec, Rng& rng);
Entity sample_entity(const WorldSpec& spec, std::span<const Combination> combinations, Rng& rng);

// Resamples proto.location until the shape is fully in frame and clear of
// every existing entity. nullopt after spec.max_placement_attempts.
std::optional<Entity> place_entity(const WorldModel& world, Entity proto, const WorldSpec& spec, Rng& rng);

// Throws GenerationError after spec.max_world_attempts failed worlds.
WorldModel sample_world(const WorldSpec& spec, Rng& rng);

// Human-readable list of the ways `world` violates `spec` (empty if none).
std::vector<std::string> check_world(const WorldModel& world, const WorldSpec& spec);

}  // namespace microworld
