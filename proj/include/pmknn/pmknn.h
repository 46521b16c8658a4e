/*
 * Copyright 2026 The pmknn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the pmknn library.
 *
 * Objects are opaque handles created by *_create / *_generate / *_load /
 * *_build functions and released with the matching *_free function.
 * Every fallible call returns a pmknn_status; on failure a description is
 * available from pmknn_last_error() on the calling thread until the next
 * failing call on that thread.
 */
#ifndef PMKNN_PMKNN_H_
#define PMKNN_PMKNN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PMKNN_API __declspec(dllexport)
#else
#define PMKNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmknn_status {
  PMKNN_OK = 0,
  /* Bad argument, configuration value or usage. */
  PMKNN_ERR_INVALID_ARGUMENT = 1,
  /* Fewer data objects than requested neighbors. */
  PMKNN_ERR_INSUFFICIENT_DATA = 2,
  /* No obfuscation rectangle satisfies the privacy constraints. */
  PMKNN_ERR_UNSATISFIABLE = 3,
  /* File could not be opened, read or written. */
  PMKNN_ERR_IO = 4,
  /* Malformed input file. */
  PMKNN_ERR_PARSE = 5,
  PMKNN_ERR_INTERNAL = 6
} pmknn_status;

typedef struct pmknn_rect {
  double min_x, min_y, max_x, max_y;
} pmknn_rect;

typedef struct pmknn_circle {
  double center_x, center_y, radius;
} pmknn_circle;

typedef struct pmknn_query_stats {
  uint64_t pages_read;
  double elapsed_seconds;
  uint64_t answer_size;
  /* Nonzero when every object was retrieved before the search settled. */
  int exhausted;
} pmknn_query_stats;

typedef struct pmknn_dataset pmknn_dataset;
typedef struct pmknn_index pmknn_index;
typedef struct pmknn_response pmknn_response;
typedef struct pmknn_trajectories pmknn_trajectories;
typedef struct pmknn_config pmknn_config;

PMKNN_API const char* pmknn_version(void);
PMKNN_API const char* pmknn_status_name(pmknn_status status);
/* Message of the last failure on this thread; "" if none. */
PMKNN_API const char* pmknn_last_error(void);

/* Side length of the square data space [0, side]^2. */
PMKNN_API double pmknn_data_space_side(void);

/* Data sets. kind is "uniform" or "zipf"; zipf_exponent is ignored for
 * uniform data. */
PMKNN_API pmknn_status pmknn_dataset_generate(const char* kind, int64_t n,
                                              uint64_t seed,
                                              double zipf_exponent,
                                              pmknn_dataset** out);
PMKNN_API pmknn_status pmknn_dataset_load_csv(const char* path, int rescale,
                                              pmknn_dataset** out);
PMKNN_API pmknn_status pmknn_dataset_save_csv(const pmknn_dataset* data,
                                              const char* path);
PMKNN_API size_t pmknn_dataset_size(const pmknn_dataset* data);
PMKNN_API pmknn_status pmknn_dataset_get(const pmknn_dataset* data,
                                         size_t i, int64_t* id, double* x,
                                         double* y);
PMKNN_API void pmknn_dataset_free(pmknn_dataset* data);

/* Spatial index. capacity 0 selects the default page capacity. */
PMKNN_API pmknn_status pmknn_index_build(const pmknn_dataset* data,
                                         int capacity, pmknn_index** out);
PMKNN_API size_t pmknn_index_size(const pmknn_index* index);
PMKNN_API int pmknn_index_height(const pmknn_index* index);
PMKNN_API void pmknn_index_free(pmknn_index* index);

/* Candidate set for every point of rect at confidence >= cl. */
PMKNN_API pmknn_status pmknn_query(const pmknn_index* index, pmknn_rect rect,
                                   double cl, int k, pmknn_response** out);
/* Per-point kNN over a grid x grid tiling of rect. */
PMKNN_API pmknn_status pmknn_query_baseline(const pmknn_index* index,
                                            pmknn_rect rect, int k, int grid,
                                            pmknn_response** out);
PMKNN_API size_t pmknn_response_size(const pmknn_response* r);
PMKNN_API pmknn_status pmknn_response_get(const pmknn_response* r, size_t i,
                                          int64_t* id, double* x, double* y);
PMKNN_API pmknn_circle pmknn_response_known_region(const pmknn_response* r);
PMKNN_API pmknn_query_stats pmknn_response_stats(const pmknn_response* r);
PMKNN_API pmknn_status pmknn_response_save_csv(const pmknn_response* r,
                                               const char* path);
PMKNN_API void pmknn_response_free(pmknn_response* r);

/* Trajectories. */
PMKNN_API pmknn_status pmknn_trajectories_generate(int count,
                                                   double total_length,
                                                   double segment_min,
                                                   double segment_max,
                                                   uint64_t seed,
                                                   pmknn_trajectories** out);
PMKNN_API pmknn_status pmknn_trajectories_load_csv(const char* path,
                                                   pmknn_trajectories** out);
PMKNN_API pmknn_status pmknn_trajectories_save_csv(
    const pmknn_trajectories* t, const char* path);
PMKNN_API size_t pmknn_trajectories_count(const pmknn_trajectories* t);
PMKNN_API size_t pmknn_trajectories_vertex_count(const pmknn_trajectories* t,
                                                 size_t i);
PMKNN_API void pmknn_trajectories_free(pmknn_trajectories* t);

/* Experiment configuration: flat key = value settings. */
PMKNN_API pmknn_status pmknn_config_create(pmknn_config** out);
/* Records a problem instead of failing; see pmknn_config_validate. */
PMKNN_API pmknn_status pmknn_config_set(pmknn_config* cfg, const char* key,
                                        const char* value,
                                        const char* origin);
PMKNN_API pmknn_status pmknn_config_load_file(pmknn_config* cfg,
                                              const char* path);
/* PMKNN_OK, or PMKNN_ERR_INVALID_ARGUMENT with every problem listed in
 * pmknn_last_error(), one per line. */
PMKNN_API pmknn_status pmknn_config_validate(const pmknn_config* cfg);
/* Accepted keys, in documentation order; NULL past the end. */
PMKNN_API const char* pmknn_config_key(size_t i);
PMKNN_API void pmknn_config_free(pmknn_config* cfg);

/* Called after each finished sweep cell. */
typedef void (*pmknn_progress_fn)(size_t done, size_t total, void* user);

/* Runs the configured sweep, writing the results CSV to results_path, or
 * to the configured output when results_path is NULL. */
PMKNN_API pmknn_status pmknn_experiment_run(const pmknn_config* cfg,
                                            const char* results_path,
                                            pmknn_progress_fn progress,
                                            void* user);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PMKNN_PMKNN_H_ */
