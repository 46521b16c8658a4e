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

#include "pmknn/rtree.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "pmknn/random.h"
#include "support/checks.h"

namespace pmknn {
namespace {

std::vector<DataObject> Line(int n) {
  std::vector<DataObject> out;
  for (int i = 0; i < n; ++i) out.push_back({i, {static_cast<double>(i), 0}});
  return out;
}

TEST(RTreeTest, HeightCountsLevelsAboveLeaves) {
  EXPECT_EQ(RTree::Build(Line(1))->height(), 0);
  EXPECT_EQ(RTree::Build(Line(50))->height(), 0);
  EXPECT_EQ(RTree::Build(Line(51))->height(), 1);
  EXPECT_EQ(RTree::Build(Line(2500))->height(), 1);
  EXPECT_EQ(RTree::Build(Line(2501))->height(), 2);
}

TEST(RTreeTest, BuildErrors) {
  EXPECT_EQ(RTree::Build(Line(3), 1).status().code(),
            absl::StatusCode::kInvalidArgument);
  std::vector<DataObject> dup = Line(3);
  dup[2].id = 0;
  EXPECT_EQ(RTree::Build(dup).status().code(),
            absl::StatusCode::kInvalidArgument);
  std::vector<DataObject> bad = Line(3);
  bad[1].location.x = NAN;
  EXPECT_EQ(RTree::Build(bad).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(RTreeTest, EmptyTree) {
  absl::StatusOr<RTree> t = RTree::Build({});
  ASSERT_TRUE(t.ok());
  EXPECT_TRUE(t->empty());
  EXPECT_FALSE(t->bounds().has_value());
  NnStream s(*t, {0, 0});
  EXPECT_FALSE(s.Next().has_value());
  EXPECT_TRUE(std::isinf(s.PeekMinDist()));
}

TEST(RTreeTest, KeepsEveryObject) {
  std::vector<DataObject> objects = testing::UniformObjects(1234, 2);
  absl::StatusOr<RTree> t = RTree::Build(objects, 8);
  ASSERT_TRUE(t.ok());
  std::vector<DataObject> stored = t->objects();
  auto by_id = [](const DataObject& a, const DataObject& b) {
    return a.id < b.id;
  };
  std::sort(stored.begin(), stored.end(), by_id);
  std::sort(objects.begin(), objects.end(), by_id);
  EXPECT_EQ(stored, objects);
}

TEST(NnStreamTest, SmallExample) {
  absl::StatusOr<RTree> t = RTree::Build(
      {{7, {0, 0}}, {8, {3, 4}}, {9, {1, 0}}, {10, {0, -2}}}, 2);
  ASSERT_TRUE(t.ok());
  NnStream s(*t, {0, 0});
  std::vector<int64_t> ids;
  std::vector<double> dists;
  while (std::optional<Neighbor> n = s.Next()) {
    ids.push_back(n->id);
    dists.push_back(n->distance);
  }
  EXPECT_EQ(ids, (std::vector<int64_t>{7, 9, 10, 8}));
  EXPECT_EQ(dists, (std::vector<double>{0, 1, 2, 5}));
  EXPECT_GT(s.io().pages_read, 0u);
}

TEST(NnStreamTest, PeekIsLowerBound) {
  absl::StatusOr<RTree> t = RTree::Build(testing::UniformObjects(3000, 4));
  ASSERT_TRUE(t.ok());
  NnStream s(*t, {4321, 1234});
  for (int i = 0; i < 500; ++i) {
    const double peek = s.PeekMinDist();
    std::optional<Neighbor> n = s.Next();
    ASSERT_TRUE(n.has_value());
    EXPECT_LE(peek, n->distance);
  }
}

TEST(NnStreamTest, NearestFirstReadsFewPages) {
  absl::StatusOr<RTree> t = RTree::Build(testing::UniformObjects(20000, 6));
  ASSERT_TRUE(t.ok());
  NnStream s(*t, {5000, 5000});
  ASSERT_TRUE(s.Next().has_value());
  EXPECT_LT(s.io().pages_read, 20u);
}

TEST(NnStreamTest, MatchesLinearScan) {
  EXPECT_EQ(testing::CheckNnStream(20, 500, 11), 0);
}

TEST(RangeCountTest, MatchesLinearScan) {
  const std::vector<DataObject> objects = testing::UniformObjects(5000, 7);
  absl::StatusOr<RTree> t = RTree::Build(objects);
  ASSERT_TRUE(t.ok());
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Circle c{{rng.Uniform(0, 10000), rng.Uniform(0, 10000)},
                   rng.Uniform(0, 1500)};
    size_t expected = 0;
    for (const DataObject& o : objects) {
      if (Dist(c.center, o.location) <= c.radius) ++expected;
    }
    EXPECT_EQ(t->RangeCount(c), expected);
  }
}

}  // namespace
}  // namespace pmknn
