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

#include <cmath>

#include "gtest/gtest.h"
#include "pmknn/geometry.h"
#include "pmknn/random.h"
#include "support/checks.h"

namespace pmknn {
namespace {

using testing::CheckGcrNesting;
using testing::CheckNnStream;
using testing::CheckSegments;

TEST(SegmentPropertyTest, CornerMiddleAndCenterEdge) {
  const testing::SegmentReport r = CheckSegments(200, 100, 17);
  EXPECT_EQ(r.instances, 200);
  EXPECT_EQ(r.corner_middle_violations, 0);
  EXPECT_EQ(r.center_edge_violations, 0);
}

TEST(NnStreamPropertyTest, MatchesSortedScan) {
  EXPECT_EQ(CheckNnStream(10, 1000, 3), 0);
}

TEST(GcrPropertyTest, NestingAndEquivalentForms) {
  absl::StatusOr<RTree> tree = RTree::Build(testing::UniformObjects(2000, 5));
  ASSERT_TRUE(tree.ok());
  const testing::NestingReport r = CheckGcrNesting(*tree, 20, 2000, 9);
  EXPECT_EQ(r.responses, 20);
  EXPECT_GT(r.inside, 0);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.form_mismatches, 0);
}

TEST(ConfidenceLevelPropertyTest, MonotoneInRadius) {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const Point o{0, 0};
    const double r = rng.Uniform(1, 100);
    const Point p{rng.Uniform(-r, r) * 0.7, rng.Uniform(-r, r) * 0.7};
    const Point q{rng.Uniform(-r, r), rng.Uniform(-r, r)};
    const double grow = rng.Uniform(0, 50);
    EXPECT_LE(ConfidenceLevel(q, p, {o, r}),
              ConfidenceLevel(q, p, {o, r + grow}));
  }
}

TEST(ConfidenceLevelPropertyTest, AntitoneAlongRayFromCenter) {
  Rng rng(22);
  for (int i = 0; i < 2000; ++i) {
    const Circle known{{0, 0}, 100};
    const Point p{rng.Uniform(-60, 60), rng.Uniform(-60, 60)};
    const double angle = rng.Uniform(0, 2 * M_PI);
    double prev_slack = INFINITY;
    double prev_cl = 2.0;
    Point prev_q{0, 0};
    for (double s = 0; s <= 100; s += 5) {
      const Point q{s * std::cos(angle), s * std::sin(angle)};
      const double slack = known.radius - Dist(known.center, q);
      EXPECT_LT(slack, prev_slack);
      prev_slack = slack;
      if (Dist(q, p) >= Dist(prev_q, p)) {
        EXPECT_LE(ConfidenceLevel(q, p, known), prev_cl + testing::kSlack);
      }
      prev_cl = ConfidenceLevel(q, p, known);
      prev_q = q;
    }
  }
}

TEST(GcrPropertyTest, GuaranteedRegionIsConvexAlongRandomSegments) {
  Rng rng(23);
  const Circle known{{0, 0}, 200};
  for (int i = 0; i < 500; ++i) {
    const Point p{rng.Uniform(-100, 100), rng.Uniform(-100, 100)};
    const Point a{rng.Uniform(-150, 150), rng.Uniform(-150, 150)};
    const Point b{rng.Uniform(-150, 150), rng.Uniform(-150, 150)};
    const double cl = std::min(ConfidenceLevel(a, p, known),
                               ConfidenceLevel(b, p, known));
    if (cl <= 0) continue;
    for (int j = 0; j <= 50; ++j) {
      const double s = j / 50.0;
      const Point x{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      EXPECT_GE(ConfidenceLevel(x, p, known), cl - testing::kSlack);
    }
  }
}

}  // namespace
}  // namespace pmknn
