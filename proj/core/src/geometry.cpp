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

#include "microworld/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace microworld {
namespace {

constexpr std::array<std::string_view, 8> kShapeNames = {
    "square", "rectangle", "triangle", "pentagon", "cross", "circle", "semicircle", "ellipse",
};

constexpr double kEdgeTolerance = 1e-12;

struct Frame {
  double cos_t;
  double sin_t;
};

Frame frame_of(double turns) {
  const double angle = 2.0 * std::numbers::pi * turns;
  return {std::cos(angle), std::sin(angle)};
}

// world -> local
Point to_local(const PlacedShape& s, Point p) {
  const Frame f = frame_of(s.rotation);
  const double dx = p.x - s.center.x;
  const double dy = p.y - s.center.y;
  return {f.cos_t * dx + f.sin_t * dy, -f.sin_t * dx + f.cos_t * dy};
}

// local -> world
Point to_world(const PlacedShape& s, Point q) {
  const Frame f = frame_of(s.rotation);
  return {s.center.x + f.cos_t * q.x - f.sin_t * q.y, s.center.y + f.sin_t * q.x + f.cos_t * q.y};
}

double half_height(const PlacedShape& s) { return s.half_extent / s.distortion; }

// Vertices in clockwise order on screen (y down), apex first.
std::vector<Point> triangle_vertices(double h) { return {{0.0, -h}, {h, h}, {-h, h}}; }

std::vector<Point> pentagon_vertices(double h) {
  std::vector<Point> v;
  for (int k = 0; k < 5; ++k) {
    const double angle = -std::numbers::pi / 2 + 2.0 * std::numbers::pi * k / 5;
    v.push_back({h * std::cos(angle), h * std::sin(angle)});
  }
  return v;
}

bool inside_convex(std::span<const Point> vertices, Point p) {
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % n];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross < -kEdgeTolerance) return false;
  }
  return true;
}

// Corners that span the shape's convex hull, in local coordinates.
std::vector<Point> hull_points(const PlacedShape& s) {
  const double h = s.half_extent;
  switch (s.kind) {
    case ShapeKind::kSquare:
      return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
    case ShapeKind::kRectangle: {
      const double hh = half_height(s);
      return {{-h, -hh}, {h, -hh}, {h, hh}, {-h, hh}};
    }
    case ShapeKind::kTriangle:
      return triangle_vertices(h);
    case ShapeKind::kPentagon:
      return pentagon_vertices(h);
    case ShapeKind::kCross: {
      const double t = h / 3;
      return {{-t, -h}, {t, -h}, {h, -t}, {h, t}, {t, h}, {-t, h}, {-h, t}, {-h, -t}};
    }
    default:
      return {};
  }
}

Box box_of_points(const PlacedShape& s, std::span<const Point> local) {
  Box box{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const Point& q : local) {
    const Point p = to_world(s, q);
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

}  // namespace

std::string_view shape_name(ShapeKind kind) { return kShapeNames[static_cast<std::size_t>(kind)]; }

std::optional<ShapeKind> shape_from_name(std::string_view name) {
  for (ShapeKind kind : kAllShapes) {
    if (shape_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool Box::contains(Point p, double tolerance) const {
  return p.x >= min_x - tolerance && p.x <= max_x + tolerance && p.y >= min_y - tolerance &&
         p.y <= max_y + tolerance;
}

bool Box::intersects(const Box& other) const {
  return min_x <= other.max_x && other.min_x <= max_x && min_y <= other.max_y && other.min_y <= max_y;
}

Box Box::inflated(double amount) const {
  return {min_x - amount, min_y - amount, max_x + amount, max_y + amount};
}

bool contains(const PlacedShape& shape, Point point) {
  const Point q = to_local(shape, point);
  const double h = shape.half_extent;
  switch (shape.kind) {
    case ShapeKind::kSquare:
      return std::abs(q.x) <= h && std::abs(q.y) <= h;
    case ShapeKind::kRectangle:
      return std::abs(q.x) <= h && std::abs(q.y) <= half_height(shape);
    case ShapeKind::kCircle:
      return q.x * q.x + q.y * q.y <= h * h;
    case ShapeKind::kEllipse: {
      const double u = q.x / h;
      const double v = q.y / half_height(shape);
      return u * u + v * v <= 1.0;
    }
    case ShapeKind::kTriangle: {
      const auto v = triangle_vertices(h);
      return inside_convex(v, q);
    }
    case ShapeKind::kPentagon: {
      const auto v = pentagon_vertices(h);
      return inside_convex(v, q);
    }
    case ShapeKind::kCross: {
      const double t = h / 3;
      return (std::abs(q.x) <= t && std::abs(q.y) <= h) || (std::abs(q.y) <= t && std::abs(q.x) <= h);
    }
    case ShapeKind::kSemicircle: {
      // Upper half of a disk of radius h centred at (0, h/2): occupies
      // [-h, h] x [-h/2, h/2] before rotation.
      const double dy = q.y - h / 2;
      return dy <= 0.0 && q.x * q.x + dy * dy <= h * h;
    }
  }
  return false;
}

Box bounding_box(const PlacedShape& shape) {
  const double h = shape.half_extent;
  switch (shape.kind) {
    case ShapeKind::kCircle:
      return {shape.center.x - h, shape.center.y - h, shape.center.x + h, shape.center.y + h};
    case ShapeKind::kEllipse: {
      const Frame f = frame_of(shape.rotation);
      const double a = h;
      const double b = half_height(shape);
      const double ex = std::sqrt(a * a * f.cos_t * f.cos_t + b * b * f.sin_t * f.sin_t);
      const double ey = std::sqrt(a * a * f.sin_t * f.sin_t + b * b * f.cos_t * f.cos_t);
      return {shape.center.x - ex, shape.center.y - ey, shape.center.x + ex, shape.center.y + ey};
    }
    case ShapeKind::kSemicircle: {
      // Chord endpoints plus whichever axis-extreme points of the full disk
      // fall on the arc.
      std::vector<Point> candidates = {{-h, h / 2}, {h, h / 2}};
      const Frame f = frame_of(shape.rotation);
      // World axis directions expressed in the local frame.
      const std::array<Point, 4> directions = {
          Point{f.cos_t, -f.sin_t}, Point{-f.cos_t, f.sin_t}, Point{f.sin_t, f.cos_t}, Point{-f.sin_t, -f.cos_t}};
      for (const Point& d : directions) {
        if (d.y <= 0.0) candidates.push_back({h * d.x, h / 2 + h * d.y});
      }
      return box_of_points(shape, candidates);
    }
    default: {
      const auto points = hull_points(shape);
      return box_of_points(shape, points);
    }
  }
}

bool overlaps(const PlacedShape& a, const PlacedShape& b, double padding) {
  return bounding_box(a).inflated(padding).intersects(bounding_box(b).inflated(padding));
}

Point rotate_about(Point point, Point pivot, double turns) {
  const Frame f = frame_of(turns);
  const double dx = point.x - pivot.x;
  const double dy = point.y - pivot.y;
  return {pivot.x + f.cos_t * dx - f.sin_t * dy, pivot.y + f.sin_t * dx + f.cos_t * dy};
}

}  // namespace microworld
