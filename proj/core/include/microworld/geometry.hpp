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
#include <string_view>

namespace microworld {

enum class ShapeKind : std::uint8_t {
  kSquare,
  kRectangle,
  kTriangle,
  kPentagon,
  kCross,
  kCircle,
  kSemicircle,
  kEllipse,
};

inline constexpr std::array<ShapeKind, 8> kAllShapes = {
    ShapeKind::kSquare, ShapeKind::kRectangle, ShapeKind::kTriangle,   ShapeKind::kPentagon,
    ShapeKind::kCross,  ShapeKind::kCircle,    ShapeKind::kSemicircle, ShapeKind::kEllipse,
};

std::string_view shape_name(ShapeKind kind);
std::optional<ShapeKind> shape_from_name(std::string_view name);

// Rectangles and ellipses carry a width/height ratio; every other shape has
// distortion 1.
constexpr bool has_distortion(ShapeKind kind) {
  return kind == ShapeKind::kRectangle || kind == ShapeKind::kEllipse;
}

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Box {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  Point center() const { return {(min_x + max_x) / 2, (min_y + max_y) / 2}; }
  bool contains(Point p, double tolerance = 0.0) const;
  bool intersects(const Box& other) const;
  Box inflated(double amount) const;
};

// A shape instantiated in image coordinates (x right, y down).
//
// The canonical unrotated geometry lives in a local frame centred on `center`
// whose extent along x is [-half_extent, half_extent]. Rectangles and ellipses
// are squashed vertically by `distortion` (width / height). `rotation` is a
// fraction of a full turn; a world point is center + R(2*pi*rotation) * local.
struct PlacedShape {
  ShapeKind kind = ShapeKind::kSquare;
  Point center;
  double half_extent = 1.0;
  double distortion = 1.0;
  double rotation = 0.0;

  friend bool operator==(const PlacedShape&, const PlacedShape&) = default;
};

// Boundary points count as inside.
bool contains(const PlacedShape& shape, Point point);

// Tight axis-aligned box around the rotated shape.
Box bounding_box(const PlacedShape& shape);

// Conservative separation test: true iff the bounding boxes, each inflated by
// `padding`, intersect. Never misses a real overlap.
bool overlaps(const PlacedShape& a, const PlacedShape& b, double padding);

// Rotates `point` about `pivot` by `turns` of a full turn, in the same sense
// as PlacedShape::rotation.
Point rotate_about(Point point, Point pivot, double turns);

}  // namespace microworld
