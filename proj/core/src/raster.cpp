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

#include "microworld/raster.hpp"

#include <algorithm>
#include <cmath>

namespace microworld {
namespace {

constexpr double kMaxBlend = 0.5;

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Float canvas, channel-interleaved.
std::vector<double> paint(const WorldModel& world, int image_size) {
  std::vector<double> canvas(static_cast<std::size_t>(image_size) * image_size * Image::kChannels, 0.0);
  for (const Entity& entity : world.entities) {
    const PlacedShape shape = placed_shape(entity, image_size);
    const Rgb rgb = shade_color(entity.color, entity.shade);
    const Box box = bounding_box(shape);
    const int x0 = std::max(0, static_cast<int>(std::floor(box.min_x - 0.5)));
    const int y0 = std::max(0, static_cast<int>(std::floor(box.min_y - 0.5)));
    const int x1 = std::min(image_size - 1, static_cast<int>(std::ceil(box.max_x - 0.5)));
    const int y1 = std::min(image_size - 1, static_cast<int>(std::ceil(box.max_y - 0.5)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (!contains(shape, {x + 0.5, y + 0.5})) continue;
        const std::size_t at = (static_cast<std::size_t>(y) * image_size + x) * Image::kChannels;
        canvas[at] = rgb.r;
        canvas[at + 1] = rgb.g;
        canvas[at + 2] = rgb.b;
      }
    }
  }
  return canvas;
}

Image quantized(const std::vector<double>& canvas, int image_size) {
  Image image(image_size, image_size);
  std::transform(canvas.begin(), canvas.end(), image.pixels.begin(), quantize);
  return image;
}

}  // namespace

Rgb shade_color(Color base, double shade) {
  const Rgb rgb = color_rgb(base);
  const double f = std::abs(shade) * kMaxBlend;
  const double target = shade > 0.0 ? 1.0 : 0.0;
  auto blend = [&](double c) { return c + (target - c) * f; };
  return {blend(rgb.r), blend(rgb.g), blend(rgb.b)};
}

Image rasterize(const WorldModel& world, int image_size) { return quantized(paint(world, image_size), image_size); }

Image apply_pixel_noise(const Image& image, double sigma, Rng& rng) {
  if (sigma <= 0.0) return image;
  Image out = image;
  for (std::uint8_t& v : out.pixels) v = quantize(v / 255.0 + trunc_normal(0.0, sigma, -1.0, 1.0, rng));
  return out;
}

Image render(const WorldModel& world, int image_size, Rng& rng) {
  std::vector<double> canvas = paint(world, image_size);
  const double sigma = world.pixel_noise_sigma;
  if (sigma > 0.0) {
    for (double& v : canvas) v += trunc_normal(0.0, sigma, -1.0, 1.0, rng);
  }
  return quantized(canvas, image_size);
}

}  // namespace microworld
