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

#include "pmknn/pmknn.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"

namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STRNE(pmknn_version(), "");
  EXPECT_STREQ(pmknn_status_name(PMKNN_OK), "ok");
  EXPECT_STRNE(pmknn_status_name(PMKNN_ERR_PARSE), "");
  EXPECT_EQ(pmknn_data_space_side(), 10000.0);
}

TEST(CApiTest, QueryRoundTrip) {
  pmknn_dataset* data = nullptr;
  ASSERT_EQ(pmknn_dataset_generate("uniform", 5000, 3, 0, &data), PMKNN_OK);
  EXPECT_EQ(pmknn_dataset_size(data), 5000u);
  int64_t id;
  double x, y;
  ASSERT_EQ(pmknn_dataset_get(data, 10, &id, &x, &y), PMKNN_OK);
  EXPECT_EQ(id, 10);
  EXPECT_EQ(pmknn_dataset_get(data, 5000, &id, &x, &y),
            PMKNN_ERR_INVALID_ARGUMENT);

  pmknn_index* index = nullptr;
  ASSERT_EQ(pmknn_index_build(data, 0, &index), PMKNN_OK);
  EXPECT_EQ(pmknn_index_size(index), 5000u);
  EXPECT_EQ(pmknn_index_height(index), 2);

  pmknn_response* r = nullptr;
  const pmknn_rect rect{4950, 4950, 5050, 5050};
  ASSERT_EQ(pmknn_query(index, rect, 0.75, 5, &r), PMKNN_OK);
  const pmknn_query_stats stats = pmknn_response_stats(r);
  EXPECT_EQ(stats.answer_size, pmknn_response_size(r));
  EXPECT_GE(pmknn_response_size(r), 5u);
  EXPECT_GT(stats.pages_read, 0u);
  EXPECT_EQ(stats.exhausted, 0);
  const pmknn_circle known = pmknn_response_known_region(r);
  EXPECT_EQ(known.center_x, 5000);
  for (size_t i = 0; i < pmknn_response_size(r); ++i) {
    ASSERT_EQ(pmknn_response_get(r, i, &id, &x, &y), PMKNN_OK);
    EXPECT_LE((x - 5000) * (x - 5000) + (y - 5000) * (y - 5000),
              known.radius * known.radius * (1 + 1e-12));
  }
  const std::string out = TempPath("capi_response.csv");
  EXPECT_EQ(pmknn_response_save_csv(r, out.c_str()), PMKNN_OK);

  pmknn_response* base = nullptr;
  ASSERT_EQ(pmknn_query_baseline(index, rect, 5, 10, &base), PMKNN_OK);
  EXPECT_GT(pmknn_response_stats(base).pages_read, stats.pages_read);
  pmknn_response_free(base);
  pmknn_response_free(r);

  EXPECT_EQ(pmknn_query(index, rect, 1.5, 5, &r), PMKNN_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(pmknn_last_error(), "");
  EXPECT_EQ(pmknn_query(index, rect, 1, 6000, &r),
            PMKNN_ERR_INSUFFICIENT_DATA);
  pmknn_index_free(index);
  pmknn_dataset_free(data);
}

TEST(CApiTest, DatasetFiles) {
  pmknn_dataset* data = nullptr;
  ASSERT_EQ(pmknn_dataset_generate("zipf", 100, 3, 1.0, &data), PMKNN_OK);
  const std::string path = TempPath("capi_points.csv");
  ASSERT_EQ(pmknn_dataset_save_csv(data, path.c_str()), PMKNN_OK);
  pmknn_dataset* back = nullptr;
  ASSERT_EQ(pmknn_dataset_load_csv(path.c_str(), 0, &back), PMKNN_OK);
  EXPECT_EQ(pmknn_dataset_size(back), 100u);
  pmknn_dataset_free(back);
  pmknn_dataset_free(data);

  EXPECT_EQ(pmknn_dataset_load_csv("/nonexistent.csv", 0, &back),
            PMKNN_ERR_IO);
  const std::string bad = TempPath("capi_bad.csv");
  std::ofstream(bad) << "id,x,y\n1,2\n";
  EXPECT_EQ(pmknn_dataset_load_csv(bad.c_str(), 0, &back), PMKNN_ERR_PARSE);
  EXPECT_NE(std::string(pmknn_last_error()).find("line 2"), std::string::npos);
  EXPECT_EQ(pmknn_dataset_generate("gauss", 10, 1, 0, &data),
            PMKNN_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(pmknn_dataset_generate("uniform", 10, 1, 0, nullptr),
            PMKNN_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, Trajectories) {
  pmknn_trajectories* t = nullptr;
  ASSERT_EQ(pmknn_trajectories_generate(3, 100, 1, 10, 4, &t), PMKNN_OK);
  EXPECT_EQ(pmknn_trajectories_count(t), 3u);
  EXPECT_GE(pmknn_trajectories_vertex_count(t, 0), 11u);
  const std::string path = TempPath("capi_traj.csv");
  ASSERT_EQ(pmknn_trajectories_save_csv(t, path.c_str()), PMKNN_OK);
  pmknn_trajectories* back = nullptr;
  ASSERT_EQ(pmknn_trajectories_load_csv(path.c_str(), &back), PMKNN_OK);
  EXPECT_EQ(pmknn_trajectories_vertex_count(back, 2),
            pmknn_trajectories_vertex_count(t, 2));
  pmknn_trajectories_free(back);
  pmknn_trajectories_free(t);
  EXPECT_EQ(pmknn_trajectories_generate(3, 100, 10, 1, 4, &t),
            PMKNN_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, ConfigAndExperiment) {
  pmknn_config* cfg = nullptr;
  ASSERT_EQ(pmknn_config_create(&cfg), PMKNN_OK);
  EXPECT_EQ(pmknn_config_set(cfg, "bogus", "1", "test"), PMKNN_OK);
  EXPECT_EQ(pmknn_config_set(cfg, "run.repeats", "x", "test"), PMKNN_OK);
  EXPECT_EQ(pmknn_config_validate(cfg), PMKNN_ERR_INVALID_ARGUMENT);
  const std::string problems = pmknn_last_error();
  EXPECT_NE(problems.find("bogus"), std::string::npos);
  EXPECT_NE(problems.find('\n'), std::string::npos);
  pmknn_config_free(cfg);

  ASSERT_EQ(pmknn_config_create(&cfg), PMKNN_OK);
  const std::pair<const char*, const char*> settings[] = {
      {"data.n", "3000"},           {"traj.count", "2"},
      {"traj.length", "500"},       {"run.repeats", "1"},
      {"run.area_samples", "20000"}, {"sweep.attack", "overlap,combined"},
      {"sweep.profiles", "1/0.75/5/3"}};
  for (const auto& [k, v] : settings) {
    ASSERT_EQ(pmknn_config_set(cfg, k, v, "test"), PMKNN_OK);
  }
  ASSERT_EQ(pmknn_config_validate(cfg), PMKNN_OK) << pmknn_last_error();
  const std::string out = TempPath("capi_results.csv");
  size_t calls = 0;
  auto progress = [](size_t done, size_t total, void* user) {
    EXPECT_LE(done, total);
    ++*static_cast<size_t*>(user);
  };
  ASSERT_EQ(pmknn_experiment_run(cfg, out.c_str(), progress, &calls),
            PMKNN_OK)
      << pmknn_last_error();
  EXPECT_EQ(calls, 2u);
  std::ifstream in(out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 4);
  pmknn_config_free(cfg);

  size_t i = 0;
  while (pmknn_config_key(i) != nullptr) ++i;
  EXPECT_GE(i, 30u);
}

}  // namespace
