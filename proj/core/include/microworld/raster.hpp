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

#include <cstdint>
#include <vector>

#include "microworld/rng.hpp"
#include "microworld/world.hpp"

namespace microworld {

// 8-bit RGB, row-major, channel-interleaved.
struct Image {
  static constexpr int kChannels = 3;

  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * kChannels, 0) {}

  std::uint8_t& at(int x, int y, int c) { return pixels[offset(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const { return pixels[offset(x, y, c)]; }
  std::size_t offset(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width + x) * kChannels + c;
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// Positive shade blends toward white, negative toward black, by at most half
// the distance.
Rgb shade_color(Color base, double shade);

// Noise-free rendering. Pixel (x, y) takes the colour of the last entity
// whose shape contains the pixel centre (x + 0.5, y + 0.5).
Image rasterize(const WorldModel& world, int image_size = kDefaultImageSize);

// Adds trunc_normal(0, sigma, -1, 1) to every channel value v / 255, clips to
// [0, 1] and requantizes. sigma == 0 returns the input unchanged.
Image apply_pixel_noise(const Image& image, double sigma, Rng& rng);

// Full rendering path used for instances: float blend, noise drawn with
// world.pixel_noise_sigma, one final quantization. Equals rasterize() when
// the sigma is 0.
Image render(const WorldModel& world, int image_size, Rng& rng);

}  // namespace microworld
