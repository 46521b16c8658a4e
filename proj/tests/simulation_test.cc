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

#include "pmknn/simulation.h"

#include <cmath>
#include <filesystem>

#include "gtest/gtest.h"
#include "pmknn/csv_io.h"
#include "pmknn/results.h"
#include "support/checks.h"

namespace pmknn {
namespace {

TEST(SpeedTest, DefaultUnits) {
  EXPECT_NEAR(SpeedInUnits(60, 63.25), 0.26350461, 1e-8);
}

TEST(SchedulerTest, Names) {
  EXPECT_EQ(*ParseScheduler("naive"), Scheduler::kNaive);
  EXPECT_EQ(SchedulerName(Scheduler::kPmknn), "pmknn");
  EXPECT_FALSE(ParseScheduler("eager").ok());
}

TEST(SampleTrajectoryTest, VerticesAndSteps) {
  const std::vector<SamplePoint> s =
      SampleTrajectory({{0, 0}, {2.5, 0}, {2.5, 1}}, 1.0);
  std::vector<double> arcs;
  for (const SamplePoint& p : s) arcs.push_back(p.arc);
  EXPECT_EQ(arcs, (std::vector<double>{0, 1, 2, 2.5, 3, 3.5}));
  EXPECT_EQ(s[3].position, (Point{2.5, 0}));
  EXPECT_EQ(s[4].position, (Point{2.5, 0.5}));
  EXPECT_EQ(s.back().position, (Point{2.5, 1}));
  EXPECT_TRUE(SampleTrajectory({}, 1).empty());
  EXPECT_EQ(SampleTrajectory({{3, 3}}, 1).size(), 1u);
}

class RunTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    index_ = new RTree(*RTree::Build(testing::UniformObjects(20000, 41)));
    TrajectorySpec spec;
    spec.count = 3;
    spec.total_length = 1500;
    spec.segment_min = 100;
    spec.segment_max = 300;
    spec.seed = 5;
    trajectories_ = new std::vector<Trajectory>(*GenerateTrajectories(spec));
  }
  static void TearDownTestSuite() {
    delete index_;
    delete trajectories_;
  }

  static RunOptions Options() {
    RunOptions o;
    o.profile.cl = 1;
    o.profile.cl_r = 0.75;
    o.profile.k = 10;
    o.profile.k_r = 5;
    o.profile.rect_area = 0.0001;
    o.area_samples = 100000;
    o.audit_fraction = 0.2;
    return o;
  }

  static RTree* index_;
  static std::vector<Trajectory>* trajectories_;
};

RTree* RunTest::index_ = nullptr;
std::vector<Trajectory>* RunTest::trajectories_ = nullptr;

TEST_F(RunTest, PmknnRunIsSoundAndDeterministic) {
  for (const Trajectory& t : *trajectories_) {
    absl::StatusOr<RunResult> a = RunPmknn(*index_, t, Options());
    ASSERT_TRUE(a.ok()) << a.status();
    EXPECT_GE(a->metrics.frequency, 1u);
    EXPECT_EQ(a->events.size(), a->metrics.frequency);
    EXPECT_GT(a->audits, 0u);
    EXPECT_EQ(a->audit_violations, 0u);
    EXPECT_GT(a->metrics.trajectory_area_pct, 0.0);
    EXPECT_TRUE(a->warnings.empty());
    for (size_t i = 0; i < a->events.size(); ++i) {
      const RequestEvent& e = a->events[i];
      EXPECT_TRUE(e.rect.Contains(e.position));
      // The overlap attack misses exactly when the user has left the
      // previous rectangle.
      EXPECT_EQ(e.attack_contains_position, i == 0 || e.in_previous_rect);
    }
    absl::StatusOr<RunResult> b = RunPmknn(*index_, t, Options());
    ASSERT_TRUE(b.ok());
    EXPECT_EQ(a->metrics.frequency, b->metrics.frequency);
    EXPECT_EQ(a->metrics.trajectory_area_pct, b->metrics.trajectory_area_pct);
    EXPECT_EQ(a->metrics.page_ios, b->metrics.page_ios);
  }
}

TEST_F(RunTest, NaiveSchedulerAlwaysOverlaps) {
  RunOptions o = Options();
  o.scheduler = Scheduler::kNaive;
  for (const Trajectory& t : *trajectories_) {
    absl::StatusOr<RunResult> r = RunPmknn(*index_, t, o);
    ASSERT_TRUE(r.ok()) << r.status();
    ASSERT_GT(r->events.size(), 1u);
    EXPECT_EQ(r->audits, 0u);
    absl::StatusOr<std::vector<RefinedRegion>> refined =
        Refine(r->view, AttackMode::kOverlap);
    ASSERT_TRUE(refined.ok());
    for (size_t i = 1; i < r->events.size(); ++i) {
      const RequestEvent& e = r->events[i];
      EXPECT_TRUE(e.in_previous_rect);
      EXPECT_TRUE(e.attack_contains_position);
      const std::optional<Rect> box = (*refined)[i].region.Bounds();
      ASSERT_TRUE(box.has_value());
      // Nonempty and strictly smaller than the rectangle.
      EXPECT_TRUE((*refined)[i].region.Contains(e.position));
      EXPECT_LT(box->Area(), e.rect.Area());
    }
  }
}

TEST_F(RunTest, RevealedRequirementWarnsAndRequestsMore) {
  RunOptions hidden = Options();
  RunOptions revealed = Options();
  revealed.profile.cl = revealed.profile.cl_r;
  revealed.profile.k = revealed.profile.k_r;
  size_t hidden_total = 0, revealed_total = 0;
  for (const Trajectory& t : *trajectories_) {
    absl::StatusOr<RunResult> a = RunPmknn(*index_, t, hidden);
    absl::StatusOr<RunResult> b = RunPmknn(*index_, t, revealed);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_EQ(b->warnings.size(), 1u);
    hidden_total += a->metrics.frequency;
    revealed_total += b->metrics.frequency;
  }
  EXPECT_GT(revealed_total, hidden_total);
}

TEST_F(RunTest, Errors) {
  RunOptions o = Options();
  EXPECT_FALSE(RunPmknn(*index_, {}, o).ok());
  o.speed = 0;
  EXPECT_FALSE(RunPmknn(*index_, (*trajectories_)[0], o).ok());
  o = Options();
  o.audit_fraction = 2;
  EXPECT_FALSE(RunPmknn(*index_, (*trajectories_)[0], o).ok());
}

TEST(SweepConfigTest, CellCounts) {
  SweepConfig c;
  EXPECT_EQ(c.CellCount(), 1u);
  EXPECT_TRUE(c.Validate().empty());
  c.area_pct = {0.001, 0.002, 0.005, 0.01, 0.02};
  c.profiles = {{1, 0.75, 20, 10}, {1, 0.75, 10, 10}, {0.75, 0.75, 20, 10}};
  c.attacks = {AttackMode::kOverlap, AttackMode::kCombined};
  EXPECT_EQ(c.CellCount(), 30u);
  c.profiles.clear();
  c.cl = {0.5, 1};
  c.k = {2, 4, 6};
  c.k_r = {1, 2};
  EXPECT_EQ(c.ExpandProfiles().size(), 12u);
  EXPECT_EQ(c.ExpandProfiles()[0].cl_r, 0.5);
}

TEST(SweepConfigTest, ValidateCollectsEveryProblem) {
  SweepConfig c;
  c.repeats = 0;
  c.threads = 0;
  c.area_pct = {};
  c.delta = {-1};
  c.area_samples = 10;
  EXPECT_EQ(c.Validate().size(), 5u);
}

TEST_F(RunTest, SweepStreamsCellsInOrderAndMatchesAcrossThreads) {
  SweepConfig c;
  c.area_pct = {0.005, 0.01};
  c.profiles = {{1, 0.75, 10, 5}};
  c.attacks = {AttackMode::kOverlap, AttackMode::kCombined};
  c.repeats = 2;
  c.area_samples = 20000;
  std::vector<ExperimentRecord> one, many;
  ASSERT_TRUE(RunSweep(c, *index_, *trajectories_,
                       [&](const ExperimentRecord& r) {
                         one.push_back(r);
                         return absl::OkStatus();
                       })
                  .ok());
  c.threads = 3;
  ASSERT_TRUE(RunSweep(c, *index_, *trajectories_,
                       [&](const ExperimentRecord& r) {
                         many.push_back(r);
                         return absl::OkStatus();
                       })
                  .ok());
  ASSERT_EQ(one.size(), 4u);
  EXPECT_EQ(one, many);
  EXPECT_EQ(one[0].area_pct, 0.005);
  EXPECT_EQ(one[1].attack, AttackMode::kCombined);
  EXPECT_EQ(one[2].area_pct, 0.01);
  EXPECT_EQ(one[0].runs(), 6);
  EXPECT_FALSE(one[0].elapsed_seconds.has_value());
}

TEST_F(RunTest, InterruptedSweepLeavesWholeRows) {
  SweepConfig c;
  c.area_pct = {0.005, 0.01, 0.02};
  c.repeats = 1;
  c.area_samples = 20000;
  const std::string path =
      (std::filesystem::path(::testing::TempDir()) / "partial.csv").string();
  absl::StatusOr<ResultsWriter> w = ResultsWriter::Open(path);
  ASSERT_TRUE(w.ok());
  int written = 0;
  absl::Status s = RunSweep(c, *index_, *trajectories_,
                            [&](const ExperimentRecord& r) -> absl::Status {
                              if (written == 2) {
                                return absl::CancelledError("stop");
                              }
                              ++written;
                              return w->Write(r);
                            });
  EXPECT_EQ(s.code(), absl::StatusCode::kCancelled);
  absl::StatusOr<std::vector<ExperimentRecord>> rows =
      ParseResultsCsv(*ReadFile(path));
  ASSERT_TRUE(rows.ok()) << rows.status();
  EXPECT_EQ(rows->size(), 2u);
}

}  // namespace
}  // namespace pmknn
