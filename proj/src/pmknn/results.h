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

#ifndef PMKNN_RESULTS_H_
#define PMKNN_RESULTS_H_

#include <cstdio>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmknn/simulation.h"

namespace pmknn {

inline constexpr int kResultsSchemaVersion = 1;

// Fixed column order of the results CSV.
const std::vector<absl::string_view>& ResultsColumns();

// "# schema=1" followed by the column header.
std::string ResultsPreamble();
// One row, newline terminated.
std::string ResultsRow(const ExperimentRecord& r);

absl::StatusOr<std::vector<ExperimentRecord>> ParseResultsCsv(
    absl::string_view text);

// Append-only sink writing one complete row per call and flushing, so an
// interrupted sweep leaves only whole rows behind.
class ResultsWriter {
 public:
  static absl::StatusOr<ResultsWriter> Open(const std::string& path);
  ResultsWriter(ResultsWriter&& other) noexcept;
  ResultsWriter& operator=(ResultsWriter&&) = delete;
  ~ResultsWriter();

  absl::Status Write(const ExperimentRecord& r);
  absl::Status Close();

 private:
  ResultsWriter(std::FILE* f, std::string path)
      : file_(f), path_(std::move(path)) {}

  std::FILE* file_;
  std::string path_;
};

}  // namespace pmknn

#endif  // PMKNN_RESULTS_H_
