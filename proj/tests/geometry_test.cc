//
// Copyright 2026 The pmknn Authors
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
//

#include "pmknn/geometry.h"

#include <cmath>

#include "gtest/gtest.h"

namespace pmknn {
namespace {

const Circle kKnown{{0, 0}, 10};

TEST(DistTest, Examples) {
  EXPECT_EQ(Dist({0, 0}, {0, 0}), 0.0);
  EXPECT_EQ(Dist({0, 0}, {3, 4}), 5.0);
  EXPECT_EQ(Dist({1, 1}, {1, 9}), 8.0);
  EXPECT_EQ(Dist({2, -7}, {-3, 5}), Dist({-3, 5}, {2, -7}));
}

TEST(MinDistTest, Examples) {
  const Rect r{0, 0, 2, 2};
  EXPECT_EQ(MinDist({1, 1}, r), 0.0);
  EXPECT_EQ(MinDist({2, 2}, r), 0.0);
  EXPECT_EQ(MinDist({5, 2}, r), 3.0);
  EXPECT_EQ(MinDist({5, 6}, r), 5.0);
}

TEST(RectTest, CornersAndMiddles) {
  const Rect unit{0, 0, 1, 1};
  const std::array<Point, 4> c = Corners(unit);
  EXPECT_EQ(c[0], (Point{0, 0}));
  EXPECT_EQ(c[1], (Point{1, 0}));
  EXPECT_EQ(c[2], (Point{1, 1}));
  EXPECT_EQ(c[3], (Point{0, 1}));
  const std::array<Point, 4> m = Middles(unit);
  EXPECT_EQ(m[0], (Point{0.5, 0}));
  EXPECT_EQ(m[1], (Point{1, 0.5}));
  EXPECT_EQ(m[2], (Point{0.5, 1}));
  EXPECT_EQ(m[3], (Point{0, 0.5}));

  const std::array<Point, 4> wide = Middles(Rect{0, 0, 2, 1});
  EXPECT_EQ(wide[0], (Point{1, 0}));
  EXPECT_EQ(wide[1], (Point{2, 0.5}));
  EXPECT_EQ(wide[2], (Point{1, 1}));
  EXPECT_EQ(wide[3], (Point{0, 0.5}));
}

TEST(RectTest, FromCenterAndValidity) {
  const Rect r = Rect::FromCenter({5, 5}, 4, 2);
  EXPECT_EQ(r, (Rect{3, 4, 7, 6}));
  EXPECT_TRUE(r.IsValid());
  EXPECT_FALSE((Rect{1, 0, 0, 1}).IsValid());
  EXPECT_DOUBLE_EQ(r.Area(), 8.0);
}

TEST(CircleTest, ClosedMembership) {
  EXPECT_TRUE(kKnown.Contains(Point{10, 0}));
  EXPECT_FALSE(kKnown.Contains(Point{10.000001, 0}));
  EXPECT_TRUE(kKnown.Contains(Rect{-7, -7, 7, 7}));
  EXPECT_FALSE(kKnown.Contains(Rect{-7.1, -7.1, 7.1, 7.1}));
}

TEST(ConfidenceParamsTest, Bounds) {
  EXPECT_TRUE((ConfidenceParams{1.0, 1}).Validate().ok());
  EXPECT_TRUE((ConfidenceParams{0.01, 3}).Validate().ok());
  EXPECT_FALSE((ConfidenceParams{0.0, 1}).Validate().ok());
  EXPECT_FALSE((ConfidenceParams{1.1, 1}).Validate().ok());
  EXPECT_FALSE((ConfidenceParams{1.0, 0}).Validate().ok());
}

TEST(ConfidenceLevelTest, Cases) {
  EXPECT_EQ(ConfidenceLevel({11, 0}, {1, 0}, kKnown), 0.0);
  EXPECT_EQ(ConfidenceLevel({0, 0}, {3, 4}, kKnown), 1.0);
  EXPECT_DOUBLE_EQ(ConfidenceLevel({6, 0}, {6, 8}, kKnown), 0.5);
  // On the boundary: r' = 0.
  EXPECT_EQ(ConfidenceLevel({10, 0}, {0, 0}, kKnown), 0.0);
  EXPECT_EQ(ConfidenceLevel({10, 0}, {10, 0}, kKnown), 1.0);
}

TEST(KthSmallestDistanceTest, Order) {
  const std::vector<Point> pts = {{0, 5}, {0, 1}, {0, 3}, {0, 2}};
  EXPECT_EQ(KthSmallestDistance({0, 0}, pts, 1), 1.0);
  EXPECT_EQ(KthSmallestDistance({0, 0}, pts, 3), 3.0);
  EXPECT_EQ(KthSmallestDistance({0, 0}, pts, 4), 5.0);
}

TEST(GcrQueryTest, GuaranteedRegion) {
  auto g = GcrQuery::Create(kKnown, {{6, 8}}, {0.5, 1});
  ASSERT_TRUE(g.ok());
  EXPECT_TRUE(g->InGuaranteedRegion({6, 8}, 0));
  EXPECT_TRUE(g->InGuaranteedRegion({6, 0}, 0));
  auto strict = GcrQuery::Create(kKnown, {{6, 8}}, {0.9, 1});
  ASSERT_TRUE(strict.ok());
  EXPECT_FALSE(strict->InGuaranteedRegion({6, 0}, 0));
}

TEST(GcrQueryTest, CombinedRegionBothForms) {
  auto g = GcrQuery::Create(kKnown, {{6, 8}}, {0.5, 1});
  ASSERT_TRUE(g.ok());
  for (Point q : {Point{6, 0}, Point{8, 0}, Point{0, 0}}) {
    auto counting = g->InCombinedRegion(q);
    auto radius = g->InCombinedRegionByRadius(q);
    ASSERT_TRUE(counting.ok());
    ASSERT_TRUE(radius.ok());
    EXPECT_EQ(*counting, *radius);
  }
  EXPECT_TRUE(*g->InCombinedRegion({6, 0}));
  EXPECT_FALSE(*g->InCombinedRegion({8, 0}));
  EXPECT_TRUE(*g->InCombinedRegion({0, 0}));
}

TEST(GcrQueryTest, Errors) {
  EXPECT_FALSE(GcrQuery::Create({{0, 0}, 0}, {}, {1, 1}).ok());
  EXPECT_FALSE(GcrQuery::Create(kKnown, {{20, 0}}, {1, 1}).ok());
  auto g = GcrQuery::Create(kKnown, {{1, 0}}, {1, 2});
  ASSERT_TRUE(g.ok());
  auto r = g->InCombinedRegion({0, 0});
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(r.status().message().find("insufficient candidates"),
            std::string::npos);
}

}  // namespace
}  // namespace pmknn
