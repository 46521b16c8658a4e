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

#ifndef PMKNN_SIMULATION_H_
#define PMKNN_SIMULATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmknn/adversary.h"
#include "pmknn/client.h"
#include "pmknn/data.h"
#include "pmknn/rtree.h"

namespace pmknn {

inline constexpr double kDefaultMetersPerUnit = 63.25;
inline constexpr double kDefaultSpeedKmh = 60.0;

// Units per second for a speed in km/h.
inline double SpeedInUnits(double kmh, double meters_per_unit) {
  return kmh * 1000.0 / 3600.0 / meters_per_unit;
}

enum class Scheduler {
  // Request on GCR(cl_r, k_r) exit or when within the safe
  // distance of the known-region boundary.
  kPmknn,
  // Straightforward scheme: request when the user reaches the boundary of
  // the current rectangle, so consecutive rectangles always overlap.
  kNaive,
};

absl::string_view SchedulerName(Scheduler s);
absl::StatusOr<Scheduler> ParseScheduler(absl::string_view name);

// Positions visited by the client: every vertex of the polyline plus a
// point every `step` units of arc. Arc values strictly increase.
struct SamplePoint {
  Point position;
  double arc = 0.0;
};
std::vector<SamplePoint> SampleTrajectory(const Trajectory& t, double step);

struct RunOptions {
  PrivacyProfile profile;
  AttackMode attack = AttackMode::kOverlap;
  Scheduler scheduler = Scheduler::kPmknn;
  // Constant user speed, units per second. Also the maximum speed the
  // provider assumes in the mmb and combined attacks.
  double speed = SpeedInUnits(kDefaultSpeedKmh, kDefaultMetersPerUnit);
  double sample_step = 1.0;
  // Share of sampled positions checked against the global oracle.
  double audit_fraction = 0.01;
  int64_t area_samples = 1'000'000;
  bool record_timing = false;
  uint64_t seed = 1;

  absl::Status Validate() const;
};

struct RequestEvent {
  size_t sample = 0;
  double time = 0.0;
  Point position;
  Rect rect;
  Circle known_region;
  bool degraded = false;
  // Send-time position inside the previous rectangle (false for the first).
  bool in_previous_rect = false;
  // Every sample since the previous request lies in both rectangles.
  bool path_in_overlap = false;
  // The attacked region for this request contains the send-time position.
  bool attack_contains_position = true;
};

struct RunMetrics {
  size_t frequency = 0;
  double trajectory_area_pct = 0.0;
  double elapsed_seconds = 0.0;
  uint64_t page_ios = 0;
  uint64_t answer_size = 0;
  size_t degraded_requests = 0;
};

struct RunResult {
  RunMetrics metrics;
  AdversaryView view;
  std::vector<RequestEvent> events;
  std::vector<std::string> warnings;
  size_t audits = 0;
  size_t audit_violations = 0;
  // Largest observed k_r-th distance over the oracle's k_r-th distance.
  double worst_audit_ratio = 0.0;
};

// Walks one trajectory at constant speed, driving a client against the
// index, and scores the requests as the provider sees them.
absl::StatusOr<RunResult> RunPmknn(const RTree& index,
                                   const Trajectory& trajectory,
                                   const RunOptions& options);

struct NamedProfile {
  double cl = 1.0;
  double cl_r = 1.0;
  int k = 1;
  int k_r = 1;
};

struct SweepConfig {
  DataSpec data;
  TrajectorySpec trajectories;
  // When set, trajectories are read from this file instead.
  std::string trajectory_path;

  // Axes. Area is a percentage of the data space.
  std::vector<double> area_pct = {0.005};
  std::vector<double> ratio = {1.0};
  // Explicit (cl, cl_r, k, k_r) tuples. When empty, the product of the
  // four scalar axes below is used; empty cl_r / k_r mean "equal to the
  // specified value".
  std::vector<NamedProfile> profiles;
  std::vector<double> cl = {1.0};
  std::vector<double> cl_r;
  std::vector<int> k = {1};
  std::vector<int> k_r;
  std::vector<double> delta = {10.0};
  std::vector<AttackMode> attacks = {AttackMode::kOverlap};

  Scheduler scheduler = Scheduler::kPmknn;
  int repeats = 25;
  double speed_kmh = kDefaultSpeedKmh;
  double meters_per_unit = kDefaultMetersPerUnit;
  double sample_step = 1.0;
  double audit_fraction = 0.01;
  int64_t area_samples = 1'000'000;
  bool record_timing = false;
  uint64_t seed = 1;
  int threads = 1;

  // Every problem found, not just the first.
  std::vector<std::string> Validate() const;
  std::vector<NamedProfile> ExpandProfiles() const;
  size_t CellCount() const;
};

// One sweep cell: means over trajectories x repeats, plus audit totals.
struct ExperimentRecord {
  std::string dataset;
  int64_t n = 0;
  AttackMode attack = AttackMode::kOverlap;
  Scheduler scheduler = Scheduler::kPmknn;
  double area_pct = 0.0;
  double ratio = 1.0;
  double cl = 1.0;
  double cl_r = 1.0;
  int k = 1;
  int k_r = 1;
  double delta = 10.0;
  int trajectories = 0;
  int repeats = 0;
  double frequency = 0.0;
  double trajectory_area_pct = 0.0;
  // Absent unless timing was requested.
  std::optional<double> elapsed_seconds;
  double page_ios = 0.0;
  double answer_size = 0.0;
  int64_t degraded_requests = 0;
  int64_t audits = 0;
  int64_t audit_violations = 0;
  // Runs with a request sent from outside the previous rectangle.
  int64_t overlap_unsound_runs = 0;
  // Runs in which the attacked region missed the true position once.
  int64_t attack_miss_runs = 0;

  int runs() const { return trajectories * repeats; }
  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

// Streams each finished cell to `sink` in cell order.
using RecordSink = std::function<absl::Status(const ExperimentRecord&)>;

// Runs every cell of the sweep. Seeds depend on (seed, trajectory, repeat)
// only, so cells that differ in one axis are paired on the same runs.
absl::Status RunSweep(const SweepConfig& config, const RecordSink& sink);

// Same as RunSweep on prepared inputs.
absl::Status RunSweep(const SweepConfig& config, const RTree& index,
                      const std::vector<Trajectory>& trajectories,
                      const RecordSink& sink);

}  // namespace pmknn

#endif  // PMKNN_SIMULATION_H_
