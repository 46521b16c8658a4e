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

#ifndef PMKNN_RUN_CONFIG_H_
#define PMKNN_RUN_CONFIG_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pmknn/simulation.h"

namespace pmknn {

struct RunConfig {
  SweepConfig sweep;
  // Results CSV destination.
  std::string results_path;
};

// Builds a RunConfig from flat "key = value" text plus overrides. Later
// assignments win, so flags applied after a file override it. Every
// problem is collected; Build() reports all of them at once.
//
// Lines are "key = value"; '#' starts a comment. List values separate
// items with commas. Profiles are written cl/cl_r/k/k_r.
class RunConfigBuilder {
 public:
  // `origin` prefixes error messages, e.g. "run.cfg:12" or "--attack".
  void Set(absl::string_view key, absl::string_view value,
           absl::string_view origin);
  void LoadText(absl::string_view text, absl::string_view origin);
  absl::Status LoadFile(const std::string& path);

  // Parse errors so far, then validation errors of the merged result.
  std::vector<std::string> Problems() const;
  absl::StatusOr<RunConfig> Build() const;

  // Every accepted key, in documentation order.
  static std::vector<absl::string_view> Keys();

 private:
  RunConfig config_;
  std::vector<std::string> errors_;
};

}  // namespace pmknn

#endif  // PMKNN_RUN_CONFIG_H_
