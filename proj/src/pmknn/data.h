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

#ifndef PMKNN_DATA_H_
#define PMKNN_DATA_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmknn/geometry.h"
#include "pmknn/rtree.h"

namespace pmknn {

enum class DataKind { kUniform, kZipf, kCsv };

absl::string_view DataKindName(DataKind kind);
absl::StatusOr<DataKind> ParseDataKind(absl::string_view name);

struct DataSpec {
  DataKind kind = DataKind::kUniform;
  int64_t n = 20000;
  uint64_t seed = 1;
  // Zipf only: cell popularity falls off as rank^-exponent.
  double zipf_exponent = 1.0;
  // Csv only.
  std::string path;
  bool rescale = false;

  absl::Status Validate() const;
};

// Side of the Zipf popularity grid, in cells.
inline constexpr int kZipfGridCells = 100;

// Deterministic under spec.seed. Ids are 0..n-1 for generated data.
absl::StatusOr<std::vector<DataObject>> GenerateData(const DataSpec& spec);

using Trajectory = std::vector<Point>;

struct TrajectorySpec {
  int count = 20;
  double total_length = 5000.0;
  double segment_min = 1.0;
  double segment_max = 10.0;
  uint64_t seed = 1;

  absl::Status Validate() const;
};

// Random polylines: uniform start, then segments of uniform length and
// uniform heading. A segment that would leave the data space is mirrored
// at the border, which keeps its length. The last segment is cut so that
// every polyline has exactly total_length of arc.
absl::StatusOr<std::vector<Trajectory>> GenerateTrajectories(
    const TrajectorySpec& spec);

double ArcLength(const Trajectory& t);

}  // namespace pmknn

#endif  // PMKNN_DATA_H_
