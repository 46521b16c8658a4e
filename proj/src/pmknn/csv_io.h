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

#ifndef PMKNN_CSV_IO_H_
#define PMKNN_CSV_IO_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmknn/data.h"
#include "pmknn/rtree.h"

namespace pmknn {

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double v);

// Splits one CSV line on commas and trims surrounding blanks. No quoting.
std::vector<absl::string_view> SplitCsvLine(absl::string_view line);

// Whole-file helpers. Errors carry the path.
absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view contents);

// Points CSV: header "id,x,y", one object per line.
std::string PointsToCsv(const std::vector<DataObject>& objects);
absl::StatusOr<std::vector<DataObject>> ParsePointsCsv(
    absl::string_view text, bool rescale, const Rect& data_space = DataSpace());
absl::StatusOr<std::vector<DataObject>> ReadPointsCsv(
    const std::string& path, bool rescale,
    const Rect& data_space = DataSpace());
absl::Status WritePointsCsv(const std::string& path,
                            const std::vector<DataObject>& objects);

// Trajectory CSV: header "traj_id,seq,x,y", vertices in order.
std::string TrajectoriesToCsv(const std::vector<Trajectory>& trajectories);
absl::StatusOr<std::vector<Trajectory>> ParseTrajectoriesCsv(
    absl::string_view text, const Rect& data_space = DataSpace());
absl::StatusOr<std::vector<Trajectory>> ReadTrajectoriesCsv(
    const std::string& path, const Rect& data_space = DataSpace());
absl::Status WriteTrajectoriesCsv(const std::string& path,
                                  const std::vector<Trajectory>& trajectories);

}  // namespace pmknn

#endif  // PMKNN_CSV_IO_H_
