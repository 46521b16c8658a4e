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

#include "pmknn/client.h"

#include <cmath>

#include "gtest/gtest.h"
#include "pmknn/random.h"
#include "support/checks.h"

namespace pmknn {
namespace {

class ClientTest : public ::testing::Test {
 protected:
  void SetUp() override {
    absl::StatusOr<RTree> t = RTree::Build(testing::UniformObjects(20000, 31));
    ASSERT_TRUE(t.ok());
    tree_ = std::make_unique<RTree>(*std::move(t));
    server_ = std::make_unique<Server>(*tree_);
  }

  std::unique_ptr<RTree> tree_;
  std::unique_ptr<Server> server_;
};

TEST(PrivacyProfileTest, Validate) {
  PrivacyProfile p;
  EXPECT_TRUE(p.Validate().ok());
  p.cl_r = 0.5;
  p.k = 3;
  p.k_r = 2;
  EXPECT_TRUE(p.Validate().ok());
  EXPECT_TRUE(p.HidesRequirement());
  EXPECT_TRUE(p.Warnings().empty());
  p.cl_r = 1.5;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.k_r = 2;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.rect_ratio = 0.5;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.delta = -1;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  EXPECT_FALSE(p.HidesRequirement());
  EXPECT_EQ(p.Warnings().size(), 1u);
}

TEST(GenerateRectangleTest, AreaRatioAndContainment) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Point q{rng.Uniform(0, 10000), rng.Uniform(0, 10000)};
    const double ratio = 1 + rng.Uniform(0, 3);
    absl::StatusOr<GeneratedRect> g =
        GenerateRectangle(q, 5000, ratio, std::nullopt, rng);
    ASSERT_TRUE(g.ok());
    EXPECT_TRUE(g->rect.Contains(q));
    EXPECT_TRUE(DataSpace().Contains(g->rect));
    EXPECT_FALSE(g->degraded);
    EXPECT_NEAR(g->rect.Area(), 5000, 1e-6);
    const double long_side = std::max(g->rect.Width(), g->rect.Height());
    const double short_side = std::min(g->rect.Width(), g->rect.Height());
    EXPECT_NEAR(long_side / short_side, ratio, 1e-6);
  }
}

TEST(GenerateRectangleTest, CornerPositionStaysInside) {
  Rng rng(3);
  absl::StatusOr<GeneratedRect> g =
      GenerateRectangle({0, 0}, 2500, 1, std::nullopt, rng);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g->rect, (Rect{0, 0, 50, 50}));
}

TEST(GenerateRectangleTest, InsideCircleContainer) {
  Rng rng(4);
  const Circle c{{5000, 5000}, 60};
  const Region container = Region::FromCircle(c);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.Uniform(0, 2 * M_PI);
    const double d = std::sqrt(rng.Uniform()) * 30;
    const Point q{5000 + d * std::cos(a), 5000 + d * std::sin(a)};
    absl::StatusOr<GeneratedRect> g =
        GenerateRectangle(q, 1000, 1.5, container, rng);
    ASSERT_TRUE(g.ok()) << g.status();
    ASSERT_TRUE(c.Contains(g->rect));
    ASSERT_TRUE(g->rect.Contains(q));
  }
}

TEST(GenerateRectangleTest, DegradesInTightContainer) {
  Rng rng(5);
  const Region container = Region::FromCircle({{100, 100}, 20});
  absl::StatusOr<GeneratedRect> g =
      GenerateRectangle({100, 100}, 1000, 1, container, rng);
  ASSERT_TRUE(g.ok());
  EXPECT_TRUE(g->degraded);
  EXPECT_LT(g->rect.Area(), 1000);
  EXPECT_GE(g->rect.Area(), 100 - 1e-6);
  const Region tiny = Region::FromCircle({{100, 100}, 1});
  EXPECT_EQ(GenerateRectangle({100, 100}, 1000, 1, tiny, rng).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(GenerateRectangle({500, 500}, 1000, 1, tiny, rng).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(GenerateRectangle({100, 100}, 0, 1, std::nullopt, rng)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST_F(ClientTest, InitiateLandsInRequiredRegion) {
  ClientOptions options;
  options.profile.cl = 1;
  options.profile.cl_r = 0.75;
  options.profile.k = 5;
  options.profile.k_r = 3;
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const Point q{rng.Uniform(200, 9800), rng.Uniform(200, 9800)};
    absl::StatusOr<Client> c = Client::Initiate(q, 0, options, *server_, i);
    ASSERT_TRUE(c.ok()) << c.status();
    ASSERT_EQ(c->request_log().size(), 1u);
    EXPECT_TRUE(c->request_log()[0].rect.Contains(q));
    EXPECT_FALSE(c->NeedsRequest(q));
    EXPECT_EQ(c->answers().size(), 3u);
    const std::vector<Neighbor> truth = BruteForceKnn(tree_->objects(), q, 3);
    EXPECT_DOUBLE_EQ(c->answers().back().distance, truth.back().distance);
  }
}

TEST_F(ClientTest, TriggerMatchesRegionTest) {
  ClientOptions options;
  options.profile.cl = 1;
  options.profile.cl_r = 0.5;
  options.profile.k = 4;
  options.profile.k_r = 2;
  options.profile.delta = 5;
  absl::StatusOr<Client> c =
      Client::Initiate({5000, 5000}, 0, options, *server_, 7);
  ASSERT_TRUE(c.ok());
  const Circle known = c->response().known_region;
  std::vector<Point> objects;
  for (const DataObject& o : c->response().objects) {
    objects.push_back(o.location);
  }
  absl::StatusOr<GcrQuery> gcr =
      GcrQuery::Create(known, objects, options.profile.required());
  ASSERT_TRUE(gcr.ok());
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    const Point q{known.center.x + rng.Uniform(-1, 1) * known.radius,
                  known.center.y + rng.Uniform(-1, 1) * known.radius};
    const bool in_gcr = *gcr->InCombinedRegionByRadius(q);
    const bool near_boundary = c->BoundaryDistance(q) <= options.profile.delta;
    EXPECT_EQ(c->NeedsRequest(q), !in_gcr || near_boundary);
  }
}

TEST_F(ClientTest, MovesRequestOnlyWhenTriggered) {
  ClientOptions options;
  options.profile.cl_r = 0.75;
  options.profile.k = 3;
  options.profile.k_r = 2;
  options.max_speed = 1.0;
  absl::StatusOr<Client> c =
      Client::Initiate({3000, 3000}, 0, options, *server_, 9);
  ASSERT_TRUE(c.ok());
  Point q{3000, 3000};
  for (int step = 1; step <= 400; ++step) {
    q.x += 1;
    const bool expected = c->NeedsRequest(q);
    const size_t before = c->request_log().size();
    absl::StatusOr<MoveResult> m = c->OnMove(q, step);
    ASSERT_TRUE(m.ok());
    EXPECT_EQ(m->requested, expected);
    EXPECT_EQ(c->request_log().size(), before + (expected ? 1 : 0));
    EXPECT_FALSE(c->NeedsRequest(q));
    if (expected) {
      // The new rectangle stays inside the reachable part of the old view.
      const RequestRecord& prev = c->request_log()[before - 1];
      const RequestRecord& cur = c->request_log()[before];
      EXPECT_TRUE(MovementBound(prev.rect, 1.0, cur.time - prev.time)
                      .Contains(cur.rect));
    }
  }
  EXPECT_GT(c->request_log().size(), 1u);
}

TEST_F(ClientTest, ForceRequestAlwaysRequests) {
  absl::StatusOr<Client> c =
      Client::Initiate({5000, 5000}, 0, ClientOptions{}, *server_, 10);
  ASSERT_TRUE(c.ok());
  absl::StatusOr<MoveResult> m = c->ForceRequest({5001, 5000}, 1);
  ASSERT_TRUE(m.ok());
  EXPECT_TRUE(m->requested);
  EXPECT_EQ(c->request_log().size(), 2u);
  EXPECT_EQ(c->request_log()[1].position, (Point{5001, 5000}));
  EXPECT_EQ(c->ForceRequest({-1, 0}, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST_F(ClientTest, InitiateErrors) {
  ClientOptions options;
  EXPECT_EQ(Client::Initiate({-5, 0}, 0, options, *server_, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
  options.profile.k_r = 4;
  EXPECT_EQ(Client::Initiate({5, 5}, 0, options, *server_, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace pmknn
