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

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "pmknn/csv_io.h"
#include "pmknn/data.h"
#include "pmknn/results.h"
#include "pmknn/rtree.h"
#include "pmknn/run_config.h"
#include "pmknn/server.h"
#include "pmknn/simulation.h"

struct pmknn_dataset {
  std::vector<pmknn::DataObject> objects;
};

struct pmknn_index {
  pmknn::RTree tree;
};

struct pmknn_response {
  pmknn::CandidateResponse response;
};

struct pmknn_trajectories {
  std::vector<pmknn::Trajectory> paths;
};

struct pmknn_config {
  pmknn::RunConfigBuilder builder;
  std::vector<std::string> load_errors;
};

namespace {

thread_local std::string last_error;

pmknn_status ToCode(absl::StatusCode code) {
  switch (code) {
    case absl::StatusCode::kOk:
      return PMKNN_OK;
    case absl::StatusCode::kInvalidArgument:
      return PMKNN_ERR_INVALID_ARGUMENT;
    case absl::StatusCode::kFailedPrecondition:
      return PMKNN_ERR_INSUFFICIENT_DATA;
    case absl::StatusCode::kOutOfRange:
      return PMKNN_ERR_UNSATISFIABLE;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kUnavailable:
      return PMKNN_ERR_IO;
    case absl::StatusCode::kDataLoss:
      return PMKNN_ERR_PARSE;
    default:
      return PMKNN_ERR_INTERNAL;
  }
}

pmknn_status Fail(pmknn_status code, std::string message) {
  last_error = std::move(message);
  return code;
}

pmknn_status Report(const absl::Status& s) {
  if (s.ok()) return PMKNN_OK;
  return Fail(ToCode(s.code()), std::string(s.message()));
}

pmknn_status NullArgument(const char* name) {
  return Fail(PMKNN_ERR_INVALID_ARGUMENT,
              absl::StrCat("argument '", name, "' must not be null"));
}

// Runs body, converting escaped exceptions into error codes.
template <typename Fn>
pmknn_status Guard(Fn body) {
  try {
    return body();
  } catch (const std::bad_alloc&) {
    return Fail(PMKNN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(PMKNN_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(PMKNN_ERR_INTERNAL, "unknown exception");
  }
}

pmknn::Rect ToRect(pmknn_rect r) {
  return {r.min_x, r.min_y, r.max_x, r.max_y};
}

pmknn_status Wrap(absl::StatusOr<pmknn::CandidateResponse> r,
                  pmknn_response** out) {
  if (!r.ok()) return Report(r.status());
  *out = new pmknn_response{*std::move(r)};
  return PMKNN_OK;
}

struct Progress {
  pmknn_progress_fn fn;
  void* user;
  size_t total;
  size_t done = 0;
};

}  // namespace

extern "C" {

const char* pmknn_version(void) { return "1.0.0"; }

const char* pmknn_status_name(pmknn_status status) {
  switch (status) {
    case PMKNN_OK:
      return "ok";
    case PMKNN_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case PMKNN_ERR_INSUFFICIENT_DATA:
      return "insufficient data";
    case PMKNN_ERR_UNSATISFIABLE:
      return "privacy constraints unsatisfiable";
    case PMKNN_ERR_IO:
      return "i/o error";
    case PMKNN_ERR_PARSE:
      return "parse error";
    case PMKNN_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* pmknn_last_error(void) { return last_error.c_str(); }

double pmknn_data_space_side(void) { return pmknn::kDataSpaceSide; }

pmknn_status pmknn_dataset_generate(const char* kind, int64_t n, uint64_t seed,
                                    double zipf_exponent,
                                    pmknn_dataset** out) {
  if (kind == nullptr) return NullArgument("kind");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    absl::StatusOr<pmknn::DataKind> k = pmknn::ParseDataKind(kind);
    if (!k.ok()) return Report(k.status());
    if (*k == pmknn::DataKind::kCsv) {
      return Fail(PMKNN_ERR_INVALID_ARGUMENT,
                  "csv data is loaded, not generated; use "
                  "pmknn_dataset_load_csv");
    }
    pmknn::DataSpec spec;
    spec.kind = *k;
    spec.n = n;
    spec.seed = seed;
    spec.zipf_exponent = zipf_exponent;
    absl::StatusOr<std::vector<pmknn::DataObject>> objects =
        pmknn::GenerateData(spec);
    if (!objects.ok()) return Report(objects.status());
    *out = new pmknn_dataset{*std::move(objects)};
    return PMKNN_OK;
  });
}

pmknn_status pmknn_dataset_load_csv(const char* path, int rescale,
                                    pmknn_dataset** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    absl::StatusOr<std::vector<pmknn::DataObject>> objects =
        pmknn::ReadPointsCsv(path, rescale != 0);
    if (!objects.ok()) return Report(objects.status());
    *out = new pmknn_dataset{*std::move(objects)};
    return PMKNN_OK;
  });
}

pmknn_status pmknn_dataset_save_csv(const pmknn_dataset* data,
                                    const char* path) {
  if (data == nullptr) return NullArgument("data");
  if (path == nullptr) return NullArgument("path");
  return Guard(
      [&] { return Report(pmknn::WritePointsCsv(path, data->objects)); });
}

size_t pmknn_dataset_size(const pmknn_dataset* data) {
  return data == nullptr ? 0 : data->objects.size();
}

pmknn_status pmknn_dataset_get(const pmknn_dataset* data, size_t i,
                               int64_t* id, double* x, double* y) {
  if (data == nullptr) return NullArgument("data");
  if (i >= data->objects.size()) {
    return Fail(PMKNN_ERR_INVALID_ARGUMENT,
                absl::StrCat("index ", i, " out of range"));
  }
  const pmknn::DataObject& o = data->objects[i];
  if (id != nullptr) *id = o.id;
  if (x != nullptr) *x = o.location.x;
  if (y != nullptr) *y = o.location.y;
  return PMKNN_OK;
}

void pmknn_dataset_free(pmknn_dataset* data) { delete data; }

pmknn_status pmknn_index_build(const pmknn_dataset* data, int capacity,
                               pmknn_index** out) {
  if (data == nullptr) return NullArgument("data");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    absl::StatusOr<pmknn::RTree> tree = pmknn::RTree::Build(
        data->objects,
        capacity == 0 ? pmknn::RTree::kDefaultCapacity : capacity);
    if (!tree.ok()) return Report(tree.status());
    *out = new pmknn_index{*std::move(tree)};
    return PMKNN_OK;
  });
}

size_t pmknn_index_size(const pmknn_index* index) {
  return index == nullptr ? 0 : index->tree.size();
}

int pmknn_index_height(const pmknn_index* index) {
  return index == nullptr ? -1 : index->tree.height();
}

void pmknn_index_free(pmknn_index* index) { delete index; }

pmknn_status pmknn_query(const pmknn_index* index, pmknn_rect rect, double cl,
                         int k, pmknn_response** out) {
  if (index == nullptr) return NullArgument("index");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    return Wrap(pmknn::Clappinq(index->tree,
                                pmknn::QueryRequest{ToRect(rect), {cl, k}}),
                out);
  });
}

pmknn_status pmknn_query_baseline(const pmknn_index* index, pmknn_rect rect,
                                  int k, int grid, pmknn_response** out) {
  if (index == nullptr) return NullArgument("index");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    return Wrap(
        pmknn::NaiveBaseline(index->tree,
                             pmknn::QueryRequest{ToRect(rect), {1.0, k}}, grid),
        out);
  });
}

size_t pmknn_response_size(const pmknn_response* r) {
  return r == nullptr ? 0 : r->response.objects.size();
}

pmknn_status pmknn_response_get(const pmknn_response* r, size_t i, int64_t* id,
                                double* x, double* y) {
  if (r == nullptr) return NullArgument("response");
  if (i >= r->response.objects.size()) {
    return Fail(PMKNN_ERR_INVALID_ARGUMENT,
                absl::StrCat("index ", i, " out of range"));
  }
  const pmknn::DataObject& o = r->response.objects[i];
  if (id != nullptr) *id = o.id;
  if (x != nullptr) *x = o.location.x;
  if (y != nullptr) *y = o.location.y;
  return PMKNN_OK;
}

pmknn_circle pmknn_response_known_region(const pmknn_response* r) {
  if (r == nullptr) return {0.0, 0.0, 0.0};
  const pmknn::Circle& c = r->response.known_region;
  return {c.center.x, c.center.y, c.radius};
}

pmknn_query_stats pmknn_response_stats(const pmknn_response* r) {
  if (r == nullptr) return {0, 0.0, 0, 0};
  const pmknn::QueryStats& s = r->response.stats;
  return {s.io.pages_read, s.elapsed_seconds, s.answer_size,
          s.exhausted ? 1 : 0};
}

pmknn_status pmknn_response_save_csv(const pmknn_response* r,
                                     const char* path) {
  if (r == nullptr) return NullArgument("response");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] {
    return Report(pmknn::WritePointsCsv(path, r->response.objects));
  });
}

void pmknn_response_free(pmknn_response* r) { delete r; }

pmknn_status pmknn_trajectories_generate(int count, double total_length,
                                         double segment_min,
                                         double segment_max, uint64_t seed,
                                         pmknn_trajectories** out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    pmknn::TrajectorySpec spec;
    spec.count = count;
    spec.total_length = total_length;
    spec.segment_min = segment_min;
    spec.segment_max = segment_max;
    spec.seed = seed;
    absl::StatusOr<std::vector<pmknn::Trajectory>> paths =
        pmknn::GenerateTrajectories(spec);
    if (!paths.ok()) return Report(paths.status());
    *out = new pmknn_trajectories{*std::move(paths)};
    return PMKNN_OK;
  });
}

pmknn_status pmknn_trajectories_load_csv(const char* path,
                                         pmknn_trajectories** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    absl::StatusOr<std::vector<pmknn::Trajectory>> paths =
        pmknn::ReadTrajectoriesCsv(path);
    if (!paths.ok()) return Report(paths.status());
    *out = new pmknn_trajectories{*std::move(paths)};
    return PMKNN_OK;
  });
}

pmknn_status pmknn_trajectories_save_csv(const pmknn_trajectories* t,
                                         const char* path) {
  if (t == nullptr) return NullArgument("trajectories");
  if (path == nullptr) return NullArgument("path");
  return Guard(
      [&] { return Report(pmknn::WriteTrajectoriesCsv(path, t->paths)); });
}

size_t pmknn_trajectories_count(const pmknn_trajectories* t) {
  return t == nullptr ? 0 : t->paths.size();
}

size_t pmknn_trajectories_vertex_count(const pmknn_trajectories* t, size_t i) {
  if (t == nullptr || i >= t->paths.size()) return 0;
  return t->paths[i].size();
}

void pmknn_trajectories_free(pmknn_trajectories* t) { delete t; }

pmknn_status pmknn_config_create(pmknn_config** out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    *out = new pmknn_config();
    return PMKNN_OK;
  });
}

pmknn_status pmknn_config_set(pmknn_config* cfg, const char* key,
                              const char* value, const char* origin) {
  if (cfg == nullptr) return NullArgument("config");
  if (key == nullptr) return NullArgument("key");
  if (value == nullptr) return NullArgument("value");
  return Guard([&] {
    cfg->builder.Set(key, value, origin == nullptr ? "api" : origin);
    return PMKNN_OK;
  });
}

pmknn_status pmknn_config_load_file(pmknn_config* cfg, const char* path) {
  if (cfg == nullptr) return NullArgument("config");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] { return Report(cfg->builder.LoadFile(path)); });
}

pmknn_status pmknn_config_validate(const pmknn_config* cfg) {
  if (cfg == nullptr) return NullArgument("config");
  return Guard([&] {
    const std::vector<std::string> problems = cfg->builder.Problems();
    if (problems.empty()) return PMKNN_OK;
    std::string joined;
    for (const std::string& p : problems) absl::StrAppend(&joined, p, "\n");
    joined.pop_back();
    return Fail(PMKNN_ERR_INVALID_ARGUMENT, std::move(joined));
  });
}

const char* pmknn_config_key(size_t i) {
  static const std::vector<std::string>* keys = [] {
    auto* v = new std::vector<std::string>();
    for (auto k : pmknn::RunConfigBuilder::Keys()) v->emplace_back(k);
    return v;
  }();
  return i < keys->size() ? (*keys)[i].c_str() : nullptr;
}

void pmknn_config_free(pmknn_config* cfg) { delete cfg; }

pmknn_status pmknn_experiment_run(const pmknn_config* cfg,
                                  const char* results_path,
                                  pmknn_progress_fn progress, void* user) {
  if (cfg == nullptr) return NullArgument("config");
  return Guard([&] {
    absl::StatusOr<pmknn::RunConfig> config = cfg->builder.Build();
    if (!config.ok()) return Report(config.status());
    const std::string path =
        results_path != nullptr ? results_path : config->results_path;
    if (path.empty()) {
      return Fail(PMKNN_ERR_INVALID_ARGUMENT,
                  "no results path given (set output.results)");
    }
    absl::StatusOr<pmknn::ResultsWriter> writer =
        pmknn::ResultsWriter::Open(path);
    if (!writer.ok()) return Report(writer.status());
    Progress state{progress, user, config->sweep.CellCount()};
    absl::Status s = pmknn::RunSweep(
        config->sweep, [&](const pmknn::ExperimentRecord& r) {
          absl::Status w = writer->Write(r);
          ++state.done;
          if (w.ok() && state.fn != nullptr) {
            state.fn(state.done, state.total, state.user);
          }
          return w;
        });
    if (!s.ok()) return Report(s);
    return Report(writer->Close());
  });
}

}  // extern "C"
