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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace microworld {
namespace {

PlacedShape circle(Point c, double h) { return {ShapeKind::kCircle, c, h, 1.0, 0.0}; }

TEST(Contains, CircleCentreAndOutside) {
  EXPECT_TRUE(contains(circle({32, 32}, 10), {32, 32}));
  EXPECT_FALSE(contains(circle({32, 32}, 10), {32, 43}));
}

TEST(Contains, CircleBoundaryCountsAsInside) { EXPECT_TRUE(contains(circle({32, 32}, 10), {42, 32})); }

TEST(Contains, AxisAlignedSquare) {
  const PlacedShape sq{ShapeKind::kSquare, {32, 32}, 5, 1.0, 0.0};
  EXPECT_TRUE(contains(sq, {36.9, 36.9}));
}

TEST(Contains, RotatedSquareMatchesInverseRotationOracle) {
  const PlacedShape sq{ShapeKind::kSquare, {32, 32}, 5, 1.0, 0.125};
  EXPECT_FALSE(contains(sq, {36.9, 36.9}));
  // Oracle: undo the 45 degree turn and test the axis-aligned square.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(24, 40);
  const double a = -2 * std::numbers::pi * 0.125;
  for (int i = 0; i < 2000; ++i) {
    const Point p{coord(rng), coord(rng)};
    const double dx = p.x - 32, dy = p.y - 32;
    const double u = std::cos(a) * dx - std::sin(a) * dy;
    const double v = std::sin(a) * dx + std::cos(a) * dy;
    EXPECT_EQ(contains(sq, p), std::abs(u) <= 5 && std::abs(v) <= 5) << p.x << "," << p.y;
  }
}

TEST(Contains, TriangleApexPointsUp) {
  const PlacedShape t{ShapeKind::kTriangle, {32, 32}, 10, 1.0, 0.0};
  EXPECT_TRUE(contains(t, {32, 22.5}));
  EXPECT_FALSE(contains(t, {32, 21.5}));
  EXPECT_TRUE(contains(t, {23, 41.5}));
  EXPECT_TRUE(contains(t, {41, 41.5}));
  EXPECT_FALSE(contains(t, {24, 24}));
}

TEST(Contains, PentagonApexUp) {
  const PlacedShape p{ShapeKind::kPentagon, {32, 32}, 10, 1.0, 0.0};
  EXPECT_TRUE(contains(p, {32, 22.5}));
  // Circumradius 10: the flat bottom edge sits 10 cos 36deg = 8.09 below the centre.
  EXPECT_TRUE(contains(p, {32, 39.9}));
  EXPECT_FALSE(contains(p, {32, 40.5}));
  EXPECT_FALSE(contains(p, {32, 21.9}));
  EXPECT_FALSE(contains(p, {23, 23}));
  EXPECT_TRUE(contains(p, {32, 32}));
}

TEST(Contains, CrossArmsAndEmptyCorners) {
  const PlacedShape c{ShapeKind::kCross, {32, 32}, 9, 1.0, 0.0};
  EXPECT_TRUE(contains(c, {32, 23.5}));
  EXPECT_TRUE(contains(c, {40.5, 32}));
  EXPECT_TRUE(contains(c, {34.9, 40}));
  EXPECT_FALSE(contains(c, {35.5, 40}));
  EXPECT_FALSE(contains(c, {39, 39}));
}

TEST(Contains, SemicircleIsUpperHalfDisk) {
  const PlacedShape s{ShapeKind::kSemicircle, {32, 32}, 10, 1.0, 0.0};
  // Disk centre sits at y = 37, the flat edge is the lower side.
  EXPECT_TRUE(contains(s, {32, 27.5}));
  EXPECT_FALSE(contains(s, {32, 26.5}));
  EXPECT_TRUE(contains(s, {23, 36.9}));
  EXPECT_FALSE(contains(s, {32, 37.5}));
}

TEST(Contains, EllipseIsSquashedVertically) {
  const PlacedShape e{ShapeKind::kEllipse, {32, 32}, 6, 2.0, 0.0};
  EXPECT_TRUE(contains(e, {37.9, 32}));
  EXPECT_TRUE(contains(e, {32, 34.9}));
  EXPECT_FALSE(contains(e, {32, 35.1}));
}

TEST(BoundingBox, Circle) {
  const Box b = bounding_box(circle({32, 32}, 10));
  EXPECT_NEAR(b.min_x, 22, 1e-9);
  EXPECT_NEAR(b.min_y, 22, 1e-9);
  EXPECT_NEAR(b.max_x, 42, 1e-9);
  EXPECT_NEAR(b.max_y, 42, 1e-9);
}

TEST(BoundingBox, SquareAtFortyFiveDegrees) {
  const Box b = bounding_box({ShapeKind::kSquare, {20, 30}, 5, 1.0, 0.125});
  EXPECT_NEAR(b.width(), 10 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(b.height(), 10 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(b.center().x, 20, 1e-9);
  EXPECT_NEAR(b.center().y, 30, 1e-9);
}

TEST(BoundingBox, DistortedEllipse) {
  const Box b = bounding_box({ShapeKind::kEllipse, {32, 32}, 6, 2.0, 0.0});
  EXPECT_NEAR(b.width(), 12, 1e-9);
  EXPECT_NEAR(b.height(), 6, 1e-9);
}

TEST(Overlaps, SpecExamples) {
  EXPECT_FALSE(overlaps(circle({17, 32}, 10), circle({47, 32}, 10), 1));
  EXPECT_TRUE(overlaps(circle({20, 32}, 10), circle({35, 32}, 10), 0));
  const PlacedShape t{ShapeKind::kTriangle, {10, 10}, 4, 1.0, 0.3};
  EXPECT_TRUE(overlaps(t, t, 0));
}

TEST(Overlaps, PaddingClosesTheGap) {
  // Boxes 2px apart: padding 1 makes them touch.
  EXPECT_FALSE(overlaps(circle({10, 10}, 4), circle({20, 10}, 4), 0.9));
  EXPECT_TRUE(overlaps(circle({10, 10}, 4), circle({20, 10}, 4), 1.0));
}

class RandomShapes : public ::testing::Test {
 protected:
  PlacedShape random_shape() {
    std::uniform_real_distribution<double> u(0, 1);
    const ShapeKind kind = kAllShapes[static_cast<std::size_t>(u(rng) * 8) % 8];
    return {kind, {8 + 48 * u(rng), 8 + 48 * u(rng)}, 2 + 8 * u(rng), has_distortion(kind) ? 2 + u(rng) : 1.0,
            u(rng)};
  }
  std::mt19937_64 rng{20260101};
};

TEST_F(RandomShapes, NoPointEscapesTheBoundingBox) {
  std::uniform_real_distribution<double> u(-1, 1);
  int inside = 0;
  for (int i = 0; i < 10000; ++i) {
    const PlacedShape s = random_shape();
    const Box box = bounding_box(s);
    for (int k = 0; k < 20; ++k) {
      const Point p{s.center.x + 1.5 * s.half_extent * u(rng), s.center.y + 1.5 * s.half_extent * u(rng)};
      if (!contains(s, p)) continue;
      ++inside;
      ASSERT_TRUE(box.contains(p, 1e-9)) << shape_name(s.kind);
    }
  }
  EXPECT_GT(inside, 50000);
}

TEST_F(RandomShapes, BoundingBoxIsTight) {
  // Some contained point lies within 2% of every box side.
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 300; ++i) {
    const PlacedShape s = random_shape();
    const Box b = bounding_box(s);
    double lo_x = 1e9, hi_x = -1e9, lo_y = 1e9, hi_y = -1e9;
    for (int k = 0; k < 40000; ++k) {
      const Point p{b.min_x + u(rng) * b.width(), b.min_y + u(rng) * b.height()};
      if (!contains(s, p)) continue;
      lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
    }
    const double tol_x = 0.02 * b.width() + 0.05, tol_y = 0.02 * b.height() + 0.05;
    EXPECT_LT(lo_x - b.min_x, tol_x) << shape_name(s.kind) << " rot " << s.rotation;
    EXPECT_LT(b.max_x - hi_x, tol_x) << shape_name(s.kind) << " rot " << s.rotation;
    EXPECT_LT(lo_y - b.min_y, tol_y) << shape_name(s.kind) << " rot " << s.rotation;
    EXPECT_LT(b.max_y - hi_y, tol_y) << shape_name(s.kind) << " rot " << s.rotation;
  }
}

TEST_F(RandomShapes, OverlapsIsSymmetric) {
  std::uniform_real_distribution<double> pad(0, 4);
  for (int i = 0; i < 10000; ++i) {
    const PlacedShape a = random_shape(), b = random_shape();
    const double p = pad(rng);
    ASSERT_EQ(overlaps(a, b, p), overlaps(b, a, p));
  }
}

TEST_F(RandomShapes, OverlapsNeverMissesSharedPoints) {
  std::uniform_real_distribution<double> u(0, 64);
  for (int i = 0; i < 2000; ++i) {
    const PlacedShape a = random_shape(), b = random_shape();
    if (overlaps(a, b, 0)) continue;
    for (int k = 0; k < 200; ++k) {
      const Point p{u(rng), u(rng)};
      ASSERT_FALSE(contains(a, p) && contains(b, p));
    }
  }
}

TEST_F(RandomShapes, ContainsIsRotationConsistent) {
  std::uniform_real_distribution<double> u(-1, 1), turn(0, 1);
  for (int i = 0; i < 10000; ++i) {
    const PlacedShape s = random_shape();
    const double r = turn(rng);
    PlacedShape turned = s;
    turned.rotation = std::fmod(s.rotation + r, 1.0);
    const Point p{s.center.x + 1.2 * s.half_extent * u(rng), s.center.y + 1.2 * s.half_extent * u(rng)};
    ASSERT_EQ(contains(turned, rotate_about(p, s.center, r)), contains(s, p));
  }
}

TEST(RotateAbout, QuarterTurnIsClockwiseOnScreen) {
  // y grows downward, so a positive turn takes +x to +y.
  const Point p = rotate_about({11, 10}, {10, 10}, 0.25);
  EXPECT_NEAR(p.x, 10, 1e-12);
  EXPECT_NEAR(p.y, 11, 1e-12);
}

TEST(ShapeNames, RoundTripAndClosedSet) {
  EXPECT_EQ(kAllShapes.size(), 8u);
  for (ShapeKind k : kAllShapes) EXPECT_EQ(shape_from_name(shape_name(k)), k);
  EXPECT_FALSE(shape_from_name("hexagon").has_value());
}

}  // namespace
}  // namespace microworld
